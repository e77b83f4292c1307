use llorder::{majorizes, LLParams, ParallelSystem};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = LLParams> {
    (0.2f64..5.0, 0.0f64..5.0).prop_map(|(s, l)| LLParams::new(s, l).unwrap())
}

fn vector() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.1f64..10.0, 2..8)
}

proptest! {
    #[test]
    fn majorization_is_reflexive(v in vector()) {
        prop_assert!(majorizes(&v, &v).unwrap());
    }

    #[test]
    fn majorization_ignores_permutation(v in vector(), seed in any::<u64>()) {
        let mut w = v.clone();
        let k = (seed as usize) % w.len();
        w.rotate_left(k);
        w.reverse();
        prop_assert!(majorizes(&v, &w).unwrap());
        prop_assert!(majorizes(&w, &v).unwrap());
    }

    #[test]
    fn transfer_from_rich_to_poor_is_majorized(v in vector(), frac in 0.0f64..1.0) {
        // Moving mass from a larger entry toward a smaller one gives a vector
        // majorized by the original.
        let (i, j) = (0..v.len()).fold((0, 0), |(lo, hi), k| {
            (if v[k] < v[lo] { k } else { lo }, if v[k] > v[hi] { k } else { hi })
        });
        let mut w = v.clone();
        let t = frac * (v[j] - v[i]) / 2.0;
        w[j] -= t;
        w[i] += t;
        prop_assert!(majorizes(&v, &w).unwrap());
        let (sv, sw): (f64, f64) = (v.iter().sum(), w.iter().sum());
        prop_assert!((sv - sw).abs() <= 1e-12 * sv);
    }

    #[test]
    fn unequal_sums_never_majorize(v in vector(), bump in 0.01f64..1.0) {
        let mut w = v.clone();
        w[0] += bump;
        prop_assert!(!majorizes(&v, &w).unwrap());
    }

    #[test]
    fn system_cdf_is_product(cs in prop::collection::vec(params(), 1..8), x in 0.001f64..0.999) {
        let sys = ParallelSystem::new(cs.clone()).unwrap();
        let prod: f64 = cs.iter().map(|c| c.cdf(x).unwrap()).product();
        prop_assert!((sys.cdf(x).unwrap() - prod).abs() <= 1e-13 * prod.max(1e-300));
    }

    #[test]
    fn system_rhr_is_additive(cs in prop::collection::vec(params(), 1..8), x in 0.001f64..0.999) {
        let sys = ParallelSystem::new(cs.clone()).unwrap();
        let sum: f64 = cs.iter().map(|c| c.rhr(x).unwrap()).sum();
        prop_assert!((sys.rhr(x).unwrap() - sum).abs() <= 1e-14 * sum);
        prop_assert!((sys.pdf(x).unwrap() - sys.cdf(x).unwrap() * sum).abs() <= 1e-12 * sys.pdf(x).unwrap());
    }

    #[test]
    fn quantile_inverts_cdf(p in params(), q in 1e-6f64..(1.0 - 1e-6)) {
        let x = p.quantile(q).unwrap();
        prop_assert!((p.cdf(x).unwrap() - q).abs() <= 1e-12);
    }

    #[test]
    fn cdf_is_monotone_and_bounded(p in params(), a in 0.001f64..0.999, b in 0.001f64..0.999) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let (fl, fh) = (p.cdf(lo).unwrap(), p.cdf(hi).unwrap());
        prop_assert!(0.0 <= fl && fl <= fh && fh <= 1.0);
        prop_assert!((p.survival(lo).unwrap() - (1.0 - fl)).abs() < 1e-15);
    }
}
