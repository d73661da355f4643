use std::collections::BTreeMap;

use chromod::analysis::{is_palindromic, is_unimodal};
use chromod::dyck::{enumerate, Hess};
use chromod::engine::Engine;
use chromod::network::{endpoint_polynomials, is_manifestly_positive};
use chromod::oracle::{alpha_apply, chromatic_poly_q, csf_oracle};
use chromod::symfunc::{is_positive, Basis};
use chromod::{qhit, QRat};
use num_bigint::BigInt;

fn all_up_to(n: usize) -> Vec<Hess> {
    (1..=n).flat_map(|k| enumerate(k).unwrap()).collect()
}

#[test]
fn oracle_agrees_with_engine() {
    let engine = Engine::new();
    for h in all_up_to(6) {
        let brute = csf_oracle(&h).unwrap().convert(Basis::E);
        assert_eq!(brute, engine.csf_e(&h).unwrap(), "{h}");
    }
}

#[test]
fn transpose_and_palindromic() {
    let engine = Engine::new();
    for h in all_up_to(8) {
        let f = engine.csf_e(&h).unwrap();
        assert_eq!(f, engine.csf_e(&h.transpose()).unwrap(), "{h}");
        for (p, c) in f.polynomial_coeffs().unwrap() {
            assert!(is_palindromic(&c, h.area()), "{h} at e{p}");
        }
    }
}

#[test]
fn alpha_of_csf_is_q_chromatic() {
    let engine = Engine::new();
    for h in all_up_to(6) {
        assert_eq!(alpha_apply(&engine.csf_e(&h).unwrap()).unwrap(), chromatic_poly_q(&h), "{h}");
    }
}

// Proper colorings counted directly, without any symmetric function code.
fn count_colorings(h: &Hess, k: usize) -> u64 {
    fn go(h: &Hess, k: usize, colors: &mut Vec<usize>) -> u64 {
        let v = colors.len() + 1;
        if v > h.n() {
            return 1;
        }
        let mut total = 0;
        for c in 0..k {
            let clash = (1..v).any(|u| h.at(u) >= v && colors[u - 1] == c);
            if !clash {
                colors.push(c);
                total += go(h, k, colors);
                colors.pop();
            }
        }
        total
    }
    go(h, k, &mut Vec::new())
}

#[test]
fn q_one_gives_chromatic_polynomial() {
    let engine = Engine::new();
    for h in all_up_to(6) {
        let f = engine.csf_e(&h).unwrap();
        for k in 0..=4 {
            let (num, den) = f.principal_specialization_one(k).eval_at_one().unwrap();
            assert_eq!(num, den * BigInt::from(count_colorings(&h, k)), "{h} k={k}");
        }
    }
}

#[test]
fn abelian_area_permutations_share_csf() {
    let engine = Engine::new();
    for n in 1..=7 {
        let mut groups: BTreeMap<Vec<usize>, Vec<Hess>> = BTreeMap::new();
        for h in enumerate(n).unwrap().filter(Hess::is_abelian) {
            let mut key = h.area_sequence();
            key.sort_unstable();
            groups.entry(key).or_default().push(h);
        }
        for hs in groups.values() {
            let first = engine.csf_e(&hs[0]).unwrap();
            for h in &hs[1..] {
                assert_eq!(engine.csf_e(h).unwrap(), first, "{} vs {h}", hs[0]);
            }
        }
    }
    let a: Hess = "2,4,4,5,5".parse().unwrap();
    let b: Hess = "3,3,4,5,5".parse().unwrap();
    assert_ne!(engine.csf_e(&a).unwrap(), engine.csf_e(&b).unwrap());
}

#[test]
fn abelian_is_e_positive_and_unimodal() {
    let engine = Engine::new();
    for h in all_up_to(7).into_iter().filter(Hess::is_abelian) {
        let f = engine.csf_e(&h).unwrap();
        assert!(is_positive(&f), "{h}");
        for (_, c) in f.polynomial_coeffs().unwrap() {
            assert!(is_unimodal(&c), "{h}");
        }
    }
}

#[test]
fn hit_number_lemmas_on_small_boards() {
    for m in 1..=4 {
        for lam in qhit::partitions_in_box(m) {
            for j in 0..=m {
                assert_eq!(qhit::r(j, m, &lam).unwrap(), qhit::r(j, m, &lam.conjugate()).unwrap());
                if let Ok(ok) = qhit::verify_rjm(j, m, &lam) {
                    assert!(ok, "Rjm j={j} m={m} {lam}");
                }
                for i in 1..=lam.len() {
                    if let Ok(ok) = qhit::verify_rjrel_swapped(j, m, &lam, i) {
                        assert!(ok, "corner relation j={j} m={m} {lam} i={i}");
                    }
                }
            }
        }
    }
}

#[test]
fn manifest_positivity_gives_positive_endpoint_polys() {
    for h in all_up_to(8).into_iter().filter(Hess::is_abelian) {
        if !is_manifestly_positive(&h) {
            continue;
        }
        for (l, p) in endpoint_polynomials(&h).unwrap() {
            assert!(p.is_nonnegative(), "{h} P_{l}");
            assert!(is_palindromic(&p, p.degree().unwrap_or(0) + p.valuation().unwrap_or(0)), "{h} P_{l}");
            assert!(is_unimodal(&p), "{h} P_{l}");
        }
    }
}

#[test]
fn rational_coefficients_have_positive_denominators() {
    let engine = Engine::new();
    let h: Hess = "3,4,5,5,5".parse().unwrap();
    let f = engine.csf_e(&h).unwrap().convert(Basis::P);
    for (_, c) in f.terms() {
        let c: &QRat = c;
        assert!(c.denom().leading().unwrap() > &BigInt::from(0));
    }
}

fn dyck_word() -> impl proptest::strategy::Strategy<Value = String> {
    use proptest::prelude::*;
    proptest::collection::vec(any::<bool>(), 1..=14).prop_map(|steps| {
        // close any step that would dip below the diagonal, then pad
        let mut w = String::new();
        let mut depth = 0usize;
        for s in steps {
            if s || depth == 0 {
                w.push('n');
                depth += 1;
            } else {
                w.push('e');
                depth -= 1;
            }
        }
        w.extend(std::iter::repeat_n('e', depth));
        w
    })
}

proptest::proptest! {
    #[test]
    fn transpose_is_an_involution(w in dyck_word()) {
        let h = Hess::from_word(&w).unwrap();
        proptest::prop_assert_eq!(h.transpose().transpose(), h.clone());
        proptest::prop_assert_eq!(h.to_word(), w);
    }

    #[test]
    fn csf_is_multiplicative(a in dyck_word(), b in dyck_word()) {
        let (x, y) = (Hess::from_word(&a).unwrap(), Hess::from_word(&b).unwrap());
        proptest::prop_assume!(x.n() + y.n() <= 9);
        let engine = Engine::global();
        let prod = engine.csf_e(&x.product(&y)).unwrap();
        let separate = engine.csf_e(&x).unwrap().mul_multiplicative(&engine.csf_e(&y).unwrap()).unwrap();
        proptest::prop_assert_eq!(prod, separate);
    }
}
