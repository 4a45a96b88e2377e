use num_complex::Complex64;
use proptest::prelude::*;

use polyval::cyclo::CycloNumber;
use polyval::hahn::{parse_series, HahnElement, HahnPoly};
use polyval::proof::{epsilon, find_peaks_valleys, raise_valley, reduce_with, slope, ResidualSequence, ValleyRule};
use polyval::rational::{rat, Rational};
use polyval::valuation::{classify, euclidean_weights, PolyValue, WsLabel};

fn cyclo(n: u32) -> impl Strategy<Value = CycloNumber> {
    proptest::collection::vec((-6i64..=6, 1i64..=4, 0i64..(2 * n as i64), any::<bool>()), 1..4).prop_map(move |terms| {
        terms.into_iter().fold(CycloNumber::zero(4 * n), |acc, (a, b, k, sine)| {
            let t = if sine { CycloNumber::sin_pi_frac(k, n) } else { CycloNumber::cos_pi_frac(k, n) };
            &acc + &t.scale(&rat(a, b))
        })
    })
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() < 1e-9 * (1.0 + b.norm())
}

fn hahn() -> impl Strategy<Value = HahnElement<Rational>> {
    let terms = proptest::collection::vec((0i64..=8, 1i64..=3, -5i64..=5), 0..4);
    (terms.clone(), terms, 0i64..=4).prop_map(|(num, den, shift)| {
        let poly = |ts: Vec<(i64, i64, i64)>| {
            HahnPoly::from_terms(ts.into_iter().map(|(e, d, c)| (rat(e, d), rat(c, 1)))).unwrap()
        };
        let den = poly(den);
        let den = if den.is_zero() { HahnPoly::one() } else { den };
        HahnElement::new(poly(num), den).unwrap().mul_t_power(&rat(-shift, 2))
    })
}

fn sequence() -> impl Strategy<Value = ResidualSequence> {
    (3usize..=10).prop_flat_map(|n| proptest::collection::vec(any::<bool>(), n).prop_map(move |ups| {
        let mut y = vec![0i64];
        for up in ups {
            let last = *y.last().unwrap();
            y.push(if up || last == 0 { last + 1 } else { last - 1 });
        }
        ResidualSequence::new(n, y).unwrap()
    }))
}

proptest! {
    #[test]
    fn cyclo_matches_complex_evaluation((a, b) in (3u32..=8).prop_flat_map(|n| (cyclo(n), cyclo(n)))) {
        let (fa, fb) = (a.to_complex(), b.to_complex());
        prop_assert!(close((&a + &b).to_complex(), fa + fb));
        prop_assert!(close((&a - &b).to_complex(), fa - fb));
        prop_assert!(close((&a * &b).to_complex(), fa * fb));
        if !b.is_zero() {
            prop_assert!(close(a.try_div(&b).unwrap().to_complex(), fa / fb));
        }
    }

    #[test]
    fn cyclo_ring_laws(a in cyclo(6), b in cyclo(6), c in cyclo(6)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), CycloNumber::one(24));
        }
    }

    #[test]
    fn cyclo_json_round_trip(a in cyclo(5)) {
        let text = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<CycloNumber>(&text).unwrap(), a);
    }

    #[test]
    fn hahn_valuation_laws(x in hahn(), y in hahn()) {
        let (vx, vy) = (x.valuation(), y.valuation());
        match (&vx, &vy) {
            (Some(a), Some(b)) => {
                prop_assert_eq!((&x * &y).valuation(), Some(a + b));
                let vs = (&x + &y).valuation();
                if a != b {
                    prop_assert_eq!(vs, Some(a.min(b).clone()));
                } else if let Some(s) = vs {
                    prop_assert!(&s >= a);
                }
            }
            _ => prop_assert!((&x * &y).is_zero()),
        }
        prop_assert_eq!(vx.is_none(), x == HahnElement::zero());
    }

    #[test]
    fn hahn_field_laws(x in hahn(), y in hahn(), z in hahn()) {
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        prop_assert_eq!(&(&x - &x), &HahnElement::zero());
        if !x.is_zero() {
            prop_assert_eq!(x.div(&x).unwrap(), HahnElement::one());
            prop_assert_eq!(&y.div(&x).unwrap() * &x, y);
        }
    }

    #[test]
    fn hahn_display_parses_back(x in hahn()) {
        prop_assert_eq!(parse_series(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn raising_any_valley_keeps_slope(s in sequence()) {
        let a = slope(&s);
        for j in find_peaks_valleys(&s).valleys {
            let r = raise_valley(&s, j).unwrap();
            prop_assert_eq!(slope(&r), a.clone());
            prop_assert_eq!(r.chi(), s.chi() + 2);
        }
    }

    #[test]
    fn epsilon_marks_exactly_peaks_and_valleys(s in sequence()) {
        let pv = find_peaks_valleys(&s);
        for i in 1..s.n() {
            let e = epsilon(&s, i).unwrap();
            prop_assert_eq!(e == 1, pv.valleys.contains(&i));
            prop_assert_eq!(e == -1, pv.peaks.contains(&i));
        }
    }

    #[test]
    fn valley_order_does_not_matter(s in sequence()) {
        let a = reduce_with(&s, ValleyRule::Leftmost);
        let b = reduce_with(&s, ValleyRule::Rightmost);
        prop_assert_eq!(&a.result, &b.result);
        prop_assert!(a.result.is_standard());
    }

    #[test]
    fn euclidean_weights_are_palindromic(n in 2usize..=12) {
        let w = euclidean_weights(n);
        prop_assert!(w.is_symmetric());
        prop_assert_eq!(w.reversed(), w);
    }

    #[test]
    fn classify_accepts_swapped_halves(pick in 0usize..5) {
        let tables: [&[u64]; 5] = [
            &[1, 1, 1, 1],
            &[1, 1, 1, 1, 1, 1],
            &[1, 2, 1, 1, 2, 1],
            &[1, 1, 2, 1, 1, 1, 1, 2, 1, 1],
            &[1, 3, 2, 3, 1, 1, 3, 2, 3, 1],
        ];
        let t = tables[pick];
        let h = t.len() / 2;
        let swapped: Vec<u64> = t[h..].iter().chain(&t[..h]).copied().collect();
        prop_assert_ne!(classify(t), WsLabel::Other);
        prop_assert_eq!(classify(&swapped), classify(t));
        let doubled: Vec<u64> = t.iter().map(|v| 2 * v).collect();
        prop_assert_eq!(classify(&doubled), WsLabel::Other);
    }

    #[test]
    fn poly_value_text_round_trip(num in 0i64..1000, den in 1i64..50, inf in any::<bool>()) {
        let v = if inf { PolyValue::Infinite } else { PolyValue::Finite(rat(num, den)) };
        let json = serde_json::to_string(&v).unwrap();
        prop_assert_eq!(serde_json::from_str::<PolyValue>(&json).unwrap(), v);
    }
}
