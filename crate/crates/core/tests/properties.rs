use proptest::prelude::*;

use lozi_core::exactnum::{rat, QuadExt, QuadField, Rational};
use lozi_core::geometry::{in_set_s, Params, PlanePoint};
use lozi_core::manifold::{grow, Label};
use lozi_core::oracle::{verify_arc_code_order, verify_markov, verify_roundtrips};
use lozi_core::symbolic::{
    admissible_right_tail, admissible_window, folding_tree, gplex_compare, kneading_set, plex_compare, CheckMode,
    PlexOrdering, TailWord,
};
use lozi_core::word::{Symbol, SymbolWord};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn field() -> QuadField {
    QuadField::new(rat(409, 100)).unwrap()
}

fn quad() -> impl Strategy<Value = QuadExt> {
    (small_rational(), small_rational()).prop_map(|(r, s)| field().make(r, s))
}

/// Parameter pairs of S on a 1/20 grid.
fn s_grid() -> Vec<(Rational, Rational)> {
    let mut out = Vec::new();
    for an in 21..40 {
        for bn in 1..20 {
            let (a, b) = (rat(an, 20), rat(bn, 20));
            if in_set_s(&a, &b) {
                out.push((a, b));
            }
        }
    }
    out
}

fn params_in_s() -> impl Strategy<Value = Params> {
    let grid = s_grid();
    (0..grid.len()).prop_map(move |i| Params::new(grid[i].0.clone(), grid[i].1.clone()).unwrap())
}

fn symbol_word(max: usize) -> impl Strategy<Value = SymbolWord> {
    prop::collection::vec(prop_oneof![Just(Symbol::Minus), Just(Symbol::Plus)], 0..max).prop_map(SymbolWord::from)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms(x in quad(), y in quad(), z in quad()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.recip().unwrap(), field().one());
        }
    }

    #[test]
    fn sign_is_multiplicative(x in quad(), y in quad()) {
        prop_assert_eq!((&x * &y).sign(), x.sign() * y.sign());
        prop_assert_eq!((-&x).sign(), -x.sign());
    }

    #[test]
    fn float_agreement(x in quad(), y in quad()) {
        let tol = |v: f64| 1e-9 * (1.0 + v.abs());
        let (fx, fy) = (x.to_f64(), y.to_f64());
        prop_assert!(((&x + &y).to_f64() - (fx + fy)).abs() < tol(fx + fy));
        prop_assert!(((&x * &y).to_f64() - fx * fy).abs() < tol(fx * fy) * 100.0);
        if fx.abs() > 1e-6 {
            prop_assert_eq!(x.sign() as f64, fx.signum());
        }
    }

    #[test]
    fn inverse_undoes_apply(p in params_in_s(), x in small_rational(), y in small_rational()) {
        let pt = p.point(x, y);
        prop_assert_eq!(p.lozi_inverse(&p.lozi_apply(&pt)), pt.clone());
        prop_assert_eq!(p.lozi_apply(&p.lozi_inverse(&pt)), pt);
    }

    #[test]
    fn image_y_has_sign_of_x(p in params_in_s(), x in small_rational(), y in small_rational()) {
        let pt = p.point(x, y);
        prop_assert_eq!(p.lozi_apply(&pt).y.sign(), pt.x.sign());
    }

    #[test]
    fn plex_is_antisymmetric(u in symbol_word(8), v in symbol_word(8)) {
        let uv = plex_compare(&u, &v);
        let vu = plex_compare(&v, &u);
        prop_assert_eq!(uv.reversed(), vu);
        if u.len() == v.len() {
            prop_assert_ne!(uv, PlexOrdering::IncomparablePrefix);
        }
    }

    #[test]
    fn gplex_ignores_plus_padding(u in symbol_word(8), v in symbol_word(8), pad in 0usize..4, start in -3i64..1) {
        let p = TailWord::new(start, u.clone());
        let mut padded_symbols = SymbolWord::from(vec![Symbol::Plus; pad]);
        padded_symbols.extend_from(&u);
        let padded = TailWord::new(start - pad as i64, padded_symbols);
        let q = TailWord::new(start, v);
        prop_assert_eq!(gplex_compare(&p, &q), gplex_compare(&padded, &q));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn windows_nest(p in params_in_s(), depth in 1usize..6) {
        let small = grow(&p, depth).unwrap();
        let big = grow(&p, depth + 1).unwrap();
        for pt in small.points() {
            let other = big.point(pt.e_index).unwrap();
            prop_assert_eq!(&other.coord, &pt.coord);
            prop_assert_eq!(other.label, pt.label);
        }
        prop_assert!(big.e_min() <= small.e_min() && big.e_max() >= small.e_max());
    }

    #[test]
    fn gluing_points_map_to_turning_points(p in params_in_s()) {
        let w = grow(&p, 5).unwrap();
        for g in w.gluing_points() {
            let Label::Gluing(n) = g.label else { unreachable!() };
            prop_assert!(g.coord.x.is_zero());
            let image = p.lozi_apply(&g.coord);
            prop_assert!(image.y.is_zero());
            if let Some(e) = w.image_of(g.e_index) {
                let t = w.point(e).unwrap();
                prop_assert_eq!(t.label, Label::Turning { n: -n, j: 1 });
                prop_assert_eq!(&t.coord, &image);
            }
        }
    }

    #[test]
    fn markov_and_code_order_hold(p in params_in_s()) {
        let w = grow(&p, 5).unwrap();
        let r = verify_markov(&w);
        prop_assert!(r.passed(), "{}", r.render_text());
        let r = verify_arc_code_order(&w);
        prop_assert!(r.passed(), "{}", r.render_text());
    }

    #[test]
    fn conversions_round_trip(p in params_in_s(), depth in 2usize..5) {
        let r = verify_roundtrips(&grow(&p, depth).unwrap(), depth + 1);
        prop_assert!(r.passed(), "{}", r.render_text());
    }

    #[test]
    fn predicates_agree(p in params_in_s(), w in symbol_word(6)) {
        let win = grow(&p, 7).unwrap();
        let k = kneading_set(&win, 8).unwrap();
        let t = folding_tree(&win);
        let mut word = SymbolWord::from(vec![Symbol::Minus]);
        word.extend_from(&w);
        let vk = admissible_right_tail(&k, &word);
        let vt = admissible_window(&t, &word, CheckMode::RightTail);
        prop_assert!(vk.consistent_with(&vt), "{} kneading {} tree {}", word, vk, vt);
    }
}

#[test]
fn trapping_holds_across_s() {
    let grid = s_grid();
    assert!(grid.len() >= 20, "only {} grid points in S", grid.len());
    for (a, b) in &grid {
        let p = Params::new(a.clone(), b.clone()).unwrap();
        assert!(p.trapping_check().unwrap(), "trapping fails at a={a} b={b}");
    }
}

#[test]
fn irrational_field_growth_is_exact() {
    let p = Params::new(rat(17, 10), rat(3, 10)).unwrap();
    assert!(!p.field().is_rational());
    let w = grow(&p, 6).unwrap();
    assert!(w.points().iter().any(|pt| *pt.coord.x.s() != rat(0, 1)));
    let x: PlanePoint = p.fixed_point_x();
    assert!(matches!(
        w.locate(&x).unwrap(),
        lozi_core::manifold::Location::Arc { index: 0, .. }
    ));
}

#[test]
fn predicates_agree_on_the_whole_grid() {
    for (a, b) in s_grid() {
        let p = Params::new(a.clone(), b.clone()).unwrap();
        let win = grow(&p, 7).unwrap();
        let k = kneading_set(&win, 8).unwrap();
        let t = folding_tree(&win);
        for len in 1..=7usize {
            for bits in 0..1u32 << (len - 1) {
                let mut word = SymbolWord::from(vec![Symbol::Minus]);
                for i in 0..len - 1 {
                    word.push(if bits >> i & 1 == 1 {
                        Symbol::Plus
                    } else {
                        Symbol::Minus
                    });
                }
                let vk = admissible_right_tail(&k, &word);
                let vt = admissible_window(&t, &word, CheckMode::RightTail);
                assert!(vk.consistent_with(&vt), "a={a} b={b} {word}: kneading {vk}, tree {vt}");
            }
        }
    }
}
