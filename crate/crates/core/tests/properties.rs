use proptest::prelude::*;

use frobgen::frobenius::{integrality_certificate, star_fmat, ConcreteAdditive, ConcreteModule};
use frobgen::linalg::FMat;
use frobgen::multipoly::{MPoly, MatRF, RatFun, YPoly};
use frobgen::solver::{additive_root_basis, solution_space, splitting_report, Tower};
use frobgen::{Embedding, Field, FieldElem};

fn f3() -> Field {
    Field::prime(3).unwrap()
}

fn f4() -> Field {
    Field::ext(2, 2).unwrap()
}

/// Polynomial in two variables over `F_3` from (coeff, e1, e2) triples.
fn mpoly(terms: &[(u8, u8, u8)]) -> MPoly {
    let f = f3();
    let t1 = MPoly::var(&f, 2, 0);
    let t2 = MPoly::var(&f, 2, 1);
    terms.iter().fold(MPoly::zero(&f, 2), |acc, &(c, a, b)| {
        let m = t1.pow(a as u32).mul(&t2.pow(b as u32)).scale(&f.from_int(c as i64));
        acc.add(&m)
    })
}

fn terms() -> impl Strategy<Value = Vec<(u8, u8, u8)>> {
    prop::collection::vec((0u8..3, 0u8..3, 0u8..3), 0..4)
}

fn nonzero_terms() -> impl Strategy<Value = Vec<(u8, u8, u8)>> {
    terms().prop_filter("nonzero", |t| !mpoly(t).is_zero())
}

fn field_elems(f: Field, n: usize) -> impl Strategy<Value = Vec<FieldElem>> {
    let order = f.order() as u64;
    prop::collection::vec(0..order, n).prop_map(move |v| v.iter().map(|&i| f.element_at(i as u128)).collect())
}

fn invertible(f: Field, n: usize) -> impl Strategy<Value = FMat> {
    field_elems(f.clone(), n * n)
        .prop_map(move |v| FMat::from_rows(&f, v.chunks(n).map(<[_]>::to_vec).collect()).unwrap())
        .prop_filter("invertible", |m| !m.det().unwrap().is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(v in field_elems(Field::ext(3, 2).unwrap(), 3)) {
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        prop_assert_eq!(&(a + b) * c, &(a * c) + &(b * c));
        prop_assert_eq!(&(a * b) * c, a * &(b * c));
        if !a.is_zero() {
            prop_assert!((a * &a.inv().unwrap()).is_one());
        }
        prop_assert_eq!(a.pow(9), a.clone());
    }

    #[test]
    fn mpoly_ring_axioms(a in terms(), b in terms(), c in terms()) {
        let (a, b, c) = (mpoly(&a), mpoly(&b), mpoly(&c));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.sub(&a), MPoly::zero(&f3(), 2));
    }

    #[test]
    fn qpower_is_repeated_multiplication(a in terms()) {
        let a = mpoly(&a);
        prop_assert_eq!(a.qpower().unwrap(), a.mul(&a).mul(&a));
    }

    #[test]
    fn ratfun_field_axioms(a in nonzero_terms(), b in nonzero_terms(), c in terms(), d in nonzero_terms()) {
        let x = RatFun::new(mpoly(&a), mpoly(&b)).unwrap();
        let y = RatFun::new(mpoly(&c), mpoly(&d)).unwrap();
        prop_assert!(x.mul(&x.inv().unwrap()).is_one());
        prop_assert_eq!(x.add(&y).sub(&y), x.clone());
        prop_assert_eq!(x.mul(&y).div(&x).unwrap(), y.clone());
        prop_assert_eq!(x.qpower().unwrap(), x.mul(&x).mul(&x));
    }

    #[test]
    fn matrf_inverse_and_twisted_det(e in prop::collection::vec(terms(), 4)) {
        let rows = vec![
            vec![RatFun::from(mpoly(&e[0])), RatFun::from(mpoly(&e[1]))],
            vec![RatFun::from(mpoly(&e[2])), RatFun::from(mpoly(&e[3]))],
        ];
        let m = MatRF::from_rows(rows).unwrap();
        let d = m.det().unwrap();
        prop_assert_eq!(m.qtwist().unwrap().det().unwrap(), d.qpower().unwrap());
        if !d.is_zero() {
            prop_assert!(m.inv().unwrap().mul(&m).unwrap().is_identity());
        }
    }

    #[test]
    fn ypoly_divrem_reconstructs(a in prop::collection::vec(terms(), 1..5), b in prop::collection::vec(terms(), 1..3)) {
        let f = f3();
        let lift = |v: &[Vec<(u8, u8, u8)>]| YPoly::from_coeffs(&f, 2, v.iter().map(|t| RatFun::from(mpoly(t))).collect());
        let (p, d) = (lift(&a), lift(&b));
        prop_assume!(!d.is_zero());
        let (q, r) = p.divrem(&d).unwrap();
        prop_assert_eq!(q.mul(&d).add(&r), p);
        prop_assert!(r.is_zero() || r.degree() < d.degree());
    }

    #[test]
    fn star_is_an_involutive_homomorphism(a in invertible(f3(), 2), b in invertible(f3(), 2)) {
        let sa = star_fmat(&a).unwrap();
        prop_assert_eq!(star_fmat(&sa).unwrap(), a.clone());
        prop_assert_eq!(star_fmat(&a.mul(&b).unwrap()).unwrap(), sa.mul(&star_fmat(&b).unwrap()).unwrap());
    }

    #[test]
    fn solution_spaces_are_subspaces(b in invertible(f4(), 2), j in 1u32..4) {
        let base = Field::prime(2).unwrap();
        let m = ConcreteModule::new(&base, b).unwrap();
        let tower = Tower::new(&base, m.field()).unwrap();
        let level = tower.level(j).unwrap();
        let lj = level.field().clone();
        let bj = m.matrix().embed(&lj).unwrap();
        let sols = solution_space(&m, &level).unwrap();
        let is_sol = |x: &[FieldElem]| {
            let xq: Vec<FieldElem> = x.iter().map(|v| v.pow(2)).collect();
            bj.mul_vec(&xq).unwrap() == x
        };
        // every F_2-combination of the basis is again a solution
        for mask in 0u32..(1 << sols.len()) {
            let mut acc = vec![lj.zero(); 2];
            for (i, s) in sols.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    acc = acc.iter().zip(s).map(|(a, b)| a + b).collect();
                }
            }
            prop_assert!(is_sol(&acc));
        }
        let basis = FMat::from_cols(&lj, &sols).unwrap_or_else(|_| FMat::zeros(&lj, 2, 0));
        prop_assert_eq!(basis.rank(), sols.len());
    }

    #[test]
    fn certificate_annihilates_solutions(b in invertible(Field::ext(3, 2).unwrap(), 2)) {
        let m = ConcreteModule::new(&f3(), b).unwrap();
        let cert = integrality_certificate(&m).unwrap();
        let rep = splitting_report(&m, None).unwrap();
        let emb = Embedding::canonical(m.field(), rep.u.field()).unwrap();
        for x in rep.u.entries() {
            prop_assert!(cert.eval_with(x, &emb).unwrap().is_zero());
        }
    }

    #[test]
    fn additive_roots_form_a_subspace(c in field_elems(f4(), 2), j in 1u32..4) {
        prop_assume!(!c[0].is_zero());
        let base = Field::prime(2).unwrap();
        let f = ConcreteAdditive::new(&base, c).unwrap();
        let tower = Tower::new(&base, f.field()).unwrap();
        let level = tower.level(j).unwrap();
        let emb = level.emb_l().clone();
        let roots = additive_root_basis(&f, &level).unwrap();
        for x in &roots {
            prop_assert!(f.eval_with(x, &emb).unwrap().is_zero());
            for y in &roots {
                let s = x + y;
                prop_assert_eq!(f.eval_with(&s, &emb).unwrap(), &f.eval_with(x, &emb).unwrap() + &f.eval_with(y, &emb).unwrap());
            }
        }
    }
}
