use std::time::Instant;

use omvis_core::omv::pow10;
use omvis_core::scales::{eplusm_forward, eplusm_inverse, ScaleKind, ScaleSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DRAWS: usize = 100_000;

fn draws(seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..DRAWS).map(|_| 10f64.powf(rng.random_range(-6.0..12.0))).collect()
}

#[test]
fn eplusm_properties_over_random_values() {
    let start = Instant::now();
    let mut xs = draws(1);
    xs.sort_by(f64::total_cmp);

    // monotone
    let s: Vec<f64> = xs.iter().map(|&x| eplusm_forward(x).unwrap()).collect();
    for w in s.windows(2) {
        assert!(w[0] <= w[1]);
    }

    // inverse
    for (&x, &sx) in xs.iter().zip(&s) {
        let back = eplusm_inverse(sx);
        assert!(((back - x) / x).abs() < 1e-12, "{x} -> {back}");
    }

    // affine inside a decade: equal mantissa steps give equal position steps
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..DRAWS {
        let e = rng.random_range(-6..12);
        let m = rng.random_range(1.0..9.0);
        let h = rng.random_range(0.0..(10.0 - m) / 2.0 - 1e-9);
        let f = |mm: f64| eplusm_forward(mm * pow10(e)).unwrap();
        let second = f(m + 2.0 * h) - 2.0 * f(m + h) + f(m);
        assert!(second.abs() < 1e-9, "e={e} m={m} h={h}: {second}");
    }

    // continuous across decade boundaries
    for k in -6..12 {
        let at = eplusm_forward(pow10(k)).unwrap();
        let below = eplusm_forward(pow10(k) * (1.0 - 1e-15)).unwrap();
        assert_eq!(at, k as f64);
        assert!((at - below).abs() < 1e-9, "gap {} at 10^{k}", at - below);
    }
    assert!(start.elapsed().as_secs_f64() < 5.0);
}

#[test]
fn banded_positions_share_band_floors() {
    for kind in [ScaleKind::Eplusm, ScaleKind::Facet, ScaleKind::Log, ScaleKind::Ssb] {
        let spec = ScaleSpec::new(kind, 4, 10, 700.0).unwrap();
        for k in 4..=10 {
            let p = spec.position(pow10(k)).unwrap();
            let expected =
                if kind == ScaleKind::Ssb { spec.band_floor(k) + 0.1 * spec.band_extent() } else { spec.band_floor(k) };
            assert!((p - expected).abs() < 1e-9, "{kind:?} {k}: {p} vs {expected}");
        }
    }
}
