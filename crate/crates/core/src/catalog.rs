//! Built-in data for the worked examples: the C8 algebra over F3, the A4
//! algebra over F2 with its quartic factor, and the F25 analogue over F5.

use crate::algebra::AlgebraSpec;

pub const C8_ALG: &str = r#"{
  "p": 3,
  "e": 1,
  "n": 2,
  "generators": [
    [["0", "2"], ["1", "0"]]
  ],
  "basis": [
    [["1", "0"], ["0", "1"]],
    [["0", "2"], ["1", "0"]]
  ]
}
"#;

pub const A4_ALG: &str = r#"{
  "p": 2,
  "e": 1,
  "n": 3,
  "generators": [
    [["1", "1", "0"], ["0", "1", "0"], ["0", "0", "1"]],
    [["1", "0", "1"], ["0", "1", "0"], ["0", "0", "1"]],
    [["1", "1", "0"], ["0", "1", "1"], ["0", "1", "0"]]
  ],
  "basis": [
    [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
    [["1", "1", "0"], ["0", "1", "1"], ["0", "1", "0"]],
    [["1", "0", "1"], ["0", "0", "1"], ["0", "1", "1"]],
    [["1", "0", "1"], ["0", "1", "0"], ["0", "0", "1"]],
    [["1", "0", "0"], ["0", "1", "1"], ["0", "1", "0"]]
  ]
}
"#;

/// `F25` over `F5` through `w^2 = 2`.
pub const P5_ALG: &str = r#"{
  "p": 5,
  "e": 1,
  "n": 2,
  "generators": [
    [["0", "2"], ["1", "0"]]
  ],
  "basis": [
    [["1", "0"], ["0", "1"]],
    [["0", "2"], ["1", "0"]]
  ]
}
"#;

/// The degree-4 factor of the A4 polynomial, in `t_1..t_5`.
pub const A4_G: &str = "Y^4+(t_1^2+t_1t_2+t_2^2+t_1t_3+t_2t_3+t_3^2+t_2t_4+t_3t_4+t_4^2+t_1t_5+t_3t_5+\
t_4t_5+t_5^2)Y^2+(t_1^2t_2+t_1t_2^2+t_2^3+t_1^2t_3+t_1t_3^2+t_3^3+t_2^2t_4+t_3^2t_4+\
t_2t_4^2+t_3t_4^2+t_1^2t_5+t_2^2t_5+t_4^2t_5+t_1t_5^2+t_2t_5^2+t_4t_5^2+t_5^3)Y+\
(t_1^2t_2t_4+t_2^3t_4+t_1^2t_3t_4+t_1t_2t_3t_4+t_1t_3^2t_4+t_2t_3^2t_4+t_1^2t_4^2+\
t_2^2t_4^2+t_2t_3t_4^2+t_2t_4^3+t_3t_4^3+t_4^4+t_1t_2^2t_5+t_2^3t_5+t_2^2t_3t_5+\
t_1t_3^2t_5+t_2t_3^2t_5+t_3^3t_5+t_1^2t_4t_5+t_1t_3t_4t_5+t_3t_4^2t_5+t_4^3t_5+\
t_2^2t_5^2+t_3^2t_5^2+t_2t_4t_5^2+t_4^2t_5^2+t_1t_5^3+t_2t_5^3+t_3t_5^3+t_5^4)";

/// One-parameter specializations of [`A4_G`], in `s`.
pub const A4_G1: &str = "s + Y + Y^2 + Y^4";
pub const A4_G2: &str = "s^2 + s^3Y + s^2Y^2 + Y^4";

/// Expected generic matrix of the A4 algebra in its listed basis.
pub const A4_GENERIC_MATRIX: [[&str; 3]; 3] = [
    ["t1+t2+t3+t4+t5", "t2", "t3+t4"],
    ["0", "t1+t2+t4+t5", "t2+t3+t5"],
    ["0", "t2+t3+t5", "t1+t3+t4"],
];

/// Expected additive polynomials for the C8 and F25 examples.
pub const C8_F: &str = "t2^2(t1^2+t2^2)Y - t1(t1^2+t2^2)Y^3 + Y^9";
pub const P5_F: &str = "t2^4(t1^2-2t2^2)Y - t1(t1^4+t2^4)Y^5 + Y^25";

/// Cyclic vectors used by the worked examples.
pub const C8_V: [i64; 2] = [1, 0];
pub const A4_V: [i64; 3] = [1, 0, 1];
pub const P5_V: [i64; 2] = [1, 0];

pub fn c8_spec() -> AlgebraSpec {
    AlgebraSpec::from_json(C8_ALG).expect("valid built-in spec")
}

pub fn a4_spec() -> AlgebraSpec {
    AlgebraSpec::from_json(A4_ALG).expect("valid built-in spec")
}

pub fn p5_spec() -> AlgebraSpec {
    AlgebraSpec::from_json(P5_ALG).expect("valid built-in spec")
}
