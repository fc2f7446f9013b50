mod common;

use std::collections::HashSet;
use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sextactic::fermat::{Cluster, FermatCurve};
use sextactic::intersect::{int_mult, resultant_order};
use sextactic::poly::{restrict_to_line, LineParam};
use sextactic::symmetry::group_elements;
use sextactic::{HomPoly, ProjPoint, Tower};

fn random_poly(k: &Arc<Tower>, deg: u32, rng: &mut ChaCha8Rng) -> HomPoly {
    let mut terms = Vec::new();
    for a in 0..=deg {
        for b in 0..=deg - a {
            if rng.gen_bool(0.5) {
                terms.push(([a, b, deg - a - b], k.random_element(rng, 5, 0.3)));
            }
        }
    }
    HomPoly::from_terms(k, deg, terms).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn euler_identity(d in 3u32..=6, deg in 1u32..=6, seed: u64) {
        let k = Tower::new(d).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_poly(&k, deg, &mut rng);
        let g = f.gradient();
        let mut sum = HomPoly::zero(&k, deg);
        for (i, gi) in g.iter().enumerate() {
            sum = &sum + &(&HomPoly::var(&k, i) * gi);
        }
        prop_assert_eq!(sum, f.scale_i64(deg as i64));
    }

    #[test]
    fn restriction_vanishes_exactly_at_points_of_the_curve(d in 3u32..=5, seed: u64) {
        let c = FermatCurve::new(d).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts = c.sextactic_points().unwrap();
        let p = &pts[rng.gen_range(0..pts.len())].point;
        let l = common::line_through(p, &mut rng);
        let form = restrict_to_line(c.poly(), &l).unwrap();
        let param = LineParam::new(&l).unwrap();
        let (s, t) = param.params_of(p);
        prop_assert!(form.eval(&s, &t).is_zero());
        prop_assert_eq!(param.point_at(&s, &t).unwrap(), p.clone());
        let m = form.root_multiplicity(&s, &t).unwrap() as u32;
        prop_assert_eq!(m, int_mult(c.poly(), &l, p).unwrap());
    }

    #[test]
    fn automorphisms_preserve_special_points(d in 3u32..=6, idx in 0usize..216) {
        let c = FermatCurve::new(d).unwrap();
        let g = group_elements(d);
        let a = &g[idx % g.len()];
        let sext: HashSet<_> = c.sextactic_points().unwrap().into_iter().map(|s| s.point).collect();
        let flex: HashSet<_> = c.inflection_points().into_iter().collect();
        for p in &sext {
            prop_assert!(sext.contains(&a.apply(p).unwrap()));
        }
        for p in &flex {
            prop_assert!(flex.contains(&a.apply(p).unwrap()));
        }
    }

    #[test]
    fn contact_order_agrees_with_resultant(d in 3u32..=4, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = FermatCurve::new(d).unwrap();
        let cluster = [Cluster::X, Cluster::Y, Cluster::Z][rng.gen_range(0..3)];
        let s = c.sextactic_point(cluster, rng.gen_range(0..d), 2 * rng.gen_range(0..d) + 1).unwrap();
        let g = if rng.gen_bool(0.5) {
            common::conic_through(&s.point, &mut rng)
        } else {
            &c.tangent_line(&s.point).unwrap() * &common::line_through(&s.point, &mut rng)
        };
        let a = int_mult(c.poly(), &g, &s.point).unwrap();
        let b = resultant_order(c.poly(), &g, &s.point, seed).unwrap();
        prop_assert_eq!(a, b.order);
    }
}

#[test]
fn two_hessian_is_minus_the_product() {
    for d in 3..=5 {
        let c = FermatCurve::new(d).unwrap();
        assert_eq!(c.two_hessian(), c.two_hessian_factored().neg());
    }
}

#[test]
fn hyperosculating_conic_has_contact_six_but_generic_conics_do_not() {
    let d = 4;
    for (curve, p) in common::generic_points(d, 4, 11) {
        let o = curve.osculating_conic_closed(&p).unwrap();
        assert_eq!(int_mult(curve.poly(), &o, &p).unwrap(), 5);
    }
    let c = FermatCurve::new(d).unwrap();
    let s = c.sextactic_point(Cluster::Y, 2, 5).unwrap();
    assert_eq!(int_mult(c.poly(), &c.hyperosculating_conic(&s).unwrap(), &s.point).unwrap(), 6);
}

#[test]
fn point_off_the_curve_has_multiplicity_zero() {
    let c = FermatCurve::new(3).unwrap();
    let p = ProjPoint::from_i64(c.tower(), [1, 1, 1]).unwrap();
    let l = HomPoly::linear([c.tower().one(), c.tower().from_i64(-1), c.tower().zero()]);
    assert_eq!(resultant_order(c.poly(), &l, &p, 0).unwrap().order, 0);
}
