//! The minimum finder against a brute-force scan of a dense uniform grid.

use lmcost_core::cost::{CostParams, Dimension};
use lmcost_core::valley::{find_minimum, DEFAULT_SEARCH_WINDOW};
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

const GRID: usize = 1_000_000;

fn brute_force(params: &CostParams, t_max: f64) -> (f64, f64) {
    let h = t_max / GRID as f64;
    (1..=GRID)
        .map(|i| {
            let t = i as f64 * h;
            (t, params.cost(t).unwrap())
        })
        .fold(
            (0.0, f64::INFINITY),
            |best, p| if p.1 < best.1 { p } else { best },
        )
}

#[test]
fn agrees_with_dense_grid() {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(7);
    for _ in 0..12 {
        let dim = if rng.random_bool(0.5) {
            Dimension::One
        } else {
            Dimension::Two
        };
        let r = 10f64.powf(rng.random_range(2.0..4.7));
        let p = rng.random_range(0.1..0.9);
        let params = CostParams::new(dim, r, p).unwrap();
        let m = find_minimum(&params, DEFAULT_SEARCH_WINDOW).unwrap();
        let (t, v) = brute_force(&params, DEFAULT_SEARCH_WINDOW);
        let sv = params.stable_value();
        assert!(!m.censored);
        assert!(
            (m.t - t).abs() <= 1e-3,
            "{dim}D r={r} P={p}: t {} vs {t}",
            m.t
        );
        assert!(
            (m.value - v).abs() <= 1e-6 * sv,
            "{dim}D r={r} P={p}: {} vs {v}",
            m.value
        );
        // the refined value is never worse than the grid
        assert!(m.value <= v + 1e-12 * sv);
    }
}

#[test]
fn censored_search_reports_the_boundary() {
    let params = CostParams::one_d(14.0, 0.1).unwrap();
    let m = find_minimum(&params, 10.0).unwrap();
    assert!(m.censored);
    let (t, _) = brute_force(&params, 10.0);
    assert_eq!(t, 10.0);
}
