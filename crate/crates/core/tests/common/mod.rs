#![allow(dead_code)]

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sextactic::fermat::{monomial_orbit, FermatCurve};
use sextactic::poly::cross;
use sextactic::{HomPoly, ProjPoint, Tower};

/// Points of `F_d` off every special orbit, spread over several fields
/// `Q(u, (m^d - 1)^(1/d))`, each carrying `(1 : t : m u)` and its images.
pub fn generic_points(d: u32, count: usize, seed: u64) -> Vec<(Arc<FermatCurve>, ProjPoint)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut towers = Vec::new();
    for m in 2u64..40 {
        let Some(c) = m.checked_pow(d) else { break };
        if let Ok(t) = Tower::with_radicand(d, c - 1) {
            towers.push((t, m));
        }
        if towers.len() == 4 {
            break;
        }
    }
    assert!(!towers.is_empty(), "no auxiliary field for d = {d}");
    let per = count.div_ceil(towers.len());
    let mut out = Vec::new();
    for (t, m) in towers {
        let curve = Arc::new(FermatCurve::over(&t));
        let base = ProjPoint::new([t.one(), t.t(), t.u().scale_i64(m as i64)]).unwrap();
        let mut orbit = monomial_orbit(&base);
        orbit.shuffle(&mut rng);
        out.extend(orbit.into_iter().take(per).map(|p| (curve.clone(), p)));
    }
    out.truncate(count);
    out
}

/// A random line through `p` with small integer direction.
pub fn line_through(p: &ProjPoint, rng: &mut ChaCha8Rng) -> HomPoly {
    let tw = p.tower();
    loop {
        let v = [0; 3].map(|_| tw.from_i64(rng.gen_range(-5..=5)));
        let c = cross(p.coords(), &v);
        if c.iter().any(|x| !x.is_zero()) {
            return HomPoly::linear(c);
        }
    }
}

/// A random conic through `p`: small integer coefficients, corrected by a
/// multiple of a monomial not vanishing at `p`.
pub fn conic_through(p: &ProjPoint, rng: &mut ChaCha8Rng) -> HomPoly {
    let tw = p.tower();
    let monos = [[2, 0, 0], [0, 2, 0], [0, 0, 2], [1, 1, 0], [1, 0, 1], [0, 1, 1]];
    let q = HomPoly::from_terms(tw, 2, monos.map(|e| (e, tw.from_i64(rng.gen_range(-4..=4))))).unwrap();
    let c = p.chart();
    let mut e = [0; 3];
    e[c] = 2;
    let m = HomPoly::monomial(e, tw.one());
    let k = q.evaluate(p).checked_div(&m.evaluate(p)).unwrap();
    &q - &m.scale(&k)
}
