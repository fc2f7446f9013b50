//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Expected values are built here from their closed forms, not taken from
//! the library's own closed-form helpers.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sextactic::arrangement::{
    bzmxny_polynomial, census, collinear_sextactic, freeness_test, grid_lines, koszul_triple, multiplicity_profile,
    parse_label, stated_syzygies, tjurina_total, verify_syzygy, LineArrangement, Sign,
};
use sextactic::fermat::{Cluster, FermatCurve};
use sextactic::intersect::{int_mult, resultant_order};
use sextactic::symmetry::{conic_common_points, invariant_intersection_suite, tangent_concurrency, Certificate};
use sextactic::{FieldElement, HomPoly, ProjPoint, Tower};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn mono(k: &Arc<Tower>, e: [u32; 3], c: i64) -> HomPoly {
    HomPoly::monomial(e, k.from_i64(c))
}

fn xyz_pow(k: &Arc<Tower>, n: u32) -> HomPoly {
    mono(k, [n, n, n], 1)
}

/// `v_a^d - v_b^d`.
fn diff_of_powers(k: &Arc<Tower>, a: usize, b: usize) -> HomPoly {
    let d = k.d();
    let mut ea = [0; 3];
    let mut eb = [0; 3];
    ea[a] = d;
    eb[b] = d;
    &mono(k, ea, 1) - &mono(k, eb, 1)
}

fn hessian_identity() -> Outcome {
    for d in 3..=8 {
        let c = FermatCurve::new(d).unwrap();
        let k = c.tower();
        let coeff = (d as i64).pow(3) * (d as i64 - 1).pow(3);
        let expected = xyz_pow(k, d - 2).scale_i64(coeff);
        check(*c.hessian() == expected, || format!("d={d}: hessian {}", c.hessian()))?;
    }
    Ok("H = d^3 (d-1)^3 (xyz)^(d-2) exactly, d = 3..8".into())
}

fn inflection_suite() -> Outcome {
    for d in 3..=8 {
        let c = FermatCurve::new(d).unwrap();
        let pts = c.inflection_points();
        let distinct: std::collections::HashSet<_> = pts.iter().collect();
        check(pts.len() == 3 * d as usize && distinct.len() == pts.len(), || format!("d={d}: {} points", pts.len()))?;
        for p in &pts {
            check(c.contains(p) && c.hessian().vanishes_at(p), || format!("d={d}: {p} not a flex"))?;
            let m = int_mult(c.poly(), &c.tangent_line(p).unwrap(), p).unwrap();
            check(m == d, || format!("d={d}: tangent contact {m} at {p}"))?;
        }
    }
    Ok("3d flexes, each with tangent contact d, d = 3..8".into())
}

fn two_hessian_identity() -> Outcome {
    let mut minus = Vec::new();
    for d in 3..=6 {
        let c = FermatCurve::new(d).unwrap();
        let k = c.tower();
        let product = &(&(&xyz_pow(k, 3 * d - 9) * &diff_of_powers(k, 0, 1)) * &diff_of_powers(k, 1, 2))
            * &diff_of_powers(k, 2, 0);
        let det = c.two_hessian();
        if det != product {
            if det == product.neg() {
                minus.push(d);
            } else {
                return Err(format!("d={d}: determinant {det} is not even proportional to the product"));
            }
        }
    }
    if minus.is_empty() {
        Ok("determinant = (xyz)^(3d-9)(x^d-y^d)(y^d-z^d)(z^d-x^d) exactly, d = 3..6".into())
    } else {
        Err(format!(
            "determinant = -(xyz)^(3d-9)(x^d-y^d)(y^d-z^d)(z^d-x^d) for d = {minus:?}; the stated identity holds only up to sign (same curve)"
        ))
    }
}

fn sextactic_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for d in 3..=8u32 {
        let c = FermatCurve::new(d).unwrap();
        let pts = c.sextactic_points().unwrap();
        let distinct: std::collections::HashSet<_> = pts.iter().map(|s| &s.point).collect();
        let n = 3 * (d * d) as usize;
        check(pts.len() == n && distinct.len() == n, || format!("d={d}: {} points", pts.len()))?;
        let g = ((d - 1) * (d - 2) / 2) as i64;
        let di = d as i64;
        let formula = 6 * (2 * di + 5 * g - 5) - 3 * di * (4 + 4 * di - 15);
        check(formula == 3 * di * di, || format!("d={d}: count formula gives {formula}"))?;
        let sample: Vec<_> = if d <= 5 { pts.iter().collect() } else { pts.choose_multiple(&mut rng, 20).collect() };
        for s in sample {
            check(c.contains(&s.point), || format!("d={d}: {} off the curve", s.point))?;
            let o = c.hyperosculating_conic(s).unwrap();
            let m = int_mult(c.poly(), &o, &s.point).unwrap();
            check(m == 6, || format!("d={d}: contact {m} at {}", s.point))?;
        }
    }
    Ok("3d^2 points, count formula 3d^2, contact 6 (all points d = 3..5, 20 sampled d = 6..8)".into())
}

fn cayley_cross_check() -> Outcome {
    for d in 3..=6u32 {
        for (curve, p) in common::generic_points(d, 20, d as u64) {
            let a = curve.osculating_conic_cayley(&p).unwrap();
            let b = curve.osculating_conic_closed(&p).unwrap();
            check(a.proportional(&b), || format!("d={d}: conics differ at {p}"))?;
        }
        let c = FermatCurve::new(d).unwrap();
        for s in c.sextactic_points().unwrap() {
            let o = c.hyperosculating_conic(&s).unwrap();
            let a = c.osculating_conic_cayley(&s.point).unwrap();
            let b = c.osculating_conic_closed(&s.point).unwrap();
            check(a.proportional(&o) && b.proportional(&o), || format!("d={d}: conics differ at {}", s.point))?;
        }
    }
    Ok("Cayley = closed form at 20 generic points per d; both = O_{j,k} at all sextactic points, d = 3..6".into())
}

fn censuses() -> Outcome {
    for d in 3..=8u32 {
        let k = Tower::new(d).unwrap();
        let c = FermatCurve::over(&k);
        let dd = (d * d) as usize;
        let fold = |m: u32, n: usize, extra: &[(u32, usize)]| {
            let mut v: BTreeMap<u32, usize> = BTreeMap::new();
            *v.entry(m).or_default() += n;
            for &(a, b) in extra {
                *v.entry(a).or_default() += b;
            }
            v
        };
        let expectations = [
            ("B", fold(3, dd, &[(d, 3)])),
            ("M", fold(2, 3 * dd, &[(d, 3)])),
            ("N", fold(2, 3 * dd, &[(d, 3)])),
            ("BzMxNy", fold(3, dd, &[(d, 3)])),
        ];
        for (label, want) in expectations {
            let arr = LineArrangement::build(label, &k).unwrap();
            let entries = census(&arr, None).unwrap();
            let got = multiplicity_profile(&entries);
            check(got == want, || format!("d={d} {label}: {got:?}, expected {want:?}"))?;
            check(entries.iter().all(|e| e.ordinary), || format!("d={d} {label}: non-ordinary point"))?;
            let on_f: Vec<_> = entries.iter().filter(|e| c.contains(&e.point)).collect();
            if label == "BzMxNy" {
                // its triple points are sextactic points by construction
                let sextactic = c.sextactic_points().unwrap();
                check(on_f.len() == dd && on_f.iter().all(|e| e.multiplicity == 3), || {
                    format!("d={d} {label}: {} points on F", on_f.len())
                })?;
                for e in on_f {
                    check(sextactic.iter().any(|s| s.point == e.point), || {
                        format!("d={d} {label}: {} not sextactic", e.point)
                    })?;
                }
            } else {
                check(on_f.is_empty(), || format!("d={d} {label}: {} on F", on_f[0].point))?;
            }
            let pairs: usize = entries.iter().map(|e| e.lines.len() * (e.lines.len() - 1) / 2).sum();
            check(pairs == arr.len() * (arr.len() - 1) / 2, || format!("d={d} {label}: pair count {pairs}"))?;
        }
    }
    Ok("B, BzMxNy: d^2 triple + 3 d-fold; M, N: 3d^2 double + 3 d-fold; no B, M, N point on F; BzMxNy triples are sextactic; d = 3..8".into())
}

struct Freeness {
    label: &'static str,
    tau: i64,
    exponents: Option<(i64, i64)>,
}

fn freeness_verdicts() -> Outcome {
    for d in 3..=8u32 {
        let k = Tower::new(d).unwrap();
        let c = FermatCurve::over(&k);
        let di = d as i64;
        let cases = [
            Freeness { label: "B", tau: 7 * di * di - 6 * di + 3, exponents: Some((di + 1, 2 * di - 2)) },
            Freeness { label: "xyz+B", tau: 7 * di * di + 9 * di + 3, exponents: Some((di + 1, 2 * di + 1)) },
            Freeness { label: "BzMxNy", tau: 7 * di * di - 6 * di + 3, exponents: Some((di + 1, 2 * di - 2)) },
            Freeness { label: "xyz+BzMxNy", tau: 7 * di * di + 9 * di + 3, exponents: Some((di + 1, 2 * di + 1)) },
            Freeness { label: "F+BzMxNy", tau: 12 * di * di - 6 * di + 3, exponents: Some((2 * di - 2, 2 * di + 1)) },
            Freeness { label: "F+B", tau: 10 * di * di - 6 * di + 3, exponents: None },
            Freeness { label: "M", tau: 6 * di * di - 6 * di + 3, exponents: None },
            Freeness { label: "M+xyz", tau: 6 * di * di + 9 * di + 3, exponents: None },
            Freeness { label: "F+M", tau: 9 * di * di - 6 * di + 3, exponents: None },
        ];
        for case in cases {
            let (arr, with_f) = parse_label(case.label, &k).unwrap();
            let entries = census(&arr, with_f.then_some(&c)).unwrap();
            let tau = tjurina_total(&entries).unwrap() as i64;
            check(tau == case.tau, || format!("d={d} {}: tau {tau}, expected {}", case.label, case.tau))?;
            let deg = arr.len() as u64 + if with_f { d as u64 } else { 0 };
            let v = freeness_test(deg, tau as u64);
            let got = v.exponents.map(|(a, b)| (a as i64, b as i64));
            check(got == case.exponents, || format!("d={d} {}: exponents {got:?}", case.label))?;
            if case.exponents.is_none() {
                check(v.discriminant_sign == Sign::Negative, || {
                    format!("d={d} {}: discriminant {}", case.label, v.discriminant)
                })?;
            }
        }
    }
    Ok("five free arrangements with the stated tau and exponents, four with negative discriminant, d = 3..8".into())
}

fn syzygies() -> Outcome {
    let mut results: BTreeMap<&'static str, Vec<(u32, bool)>> = BTreeMap::new();
    for d in 3..=6u32 {
        let k = Tower::new(d).unwrap();
        for label in ["B", "M", "BzMxNy", "xyz+BzMxNy"] {
            let p = LineArrangement::build(label, &k).unwrap().product();
            check(verify_syzygy(&koszul_triple(&p), &p).unwrap(), || format!("d={d} {label}: Koszul triple fails"))?;
        }
        for s in stated_syzygies(&k) {
            results.entry(s.name).or_default().push((d, verify_syzygy(&s.triple, &s.polynomial).unwrap()));
        }
        let p = bzmxny_polynomial(&k);
        let e = d - 1;
        let low = [mono(&k, [0, e, e], -1), mono(&k, [e, 0, e], -1), mono(&k, [e, e, 0], 2)];
        results.entry("(cyclic reorder) BzMxNy degree 2d-2").or_default().push((d, verify_syzygy(&low, &p).unwrap()));
        let sum =
            |t: &[(i64, [u32; 3])]| t.iter().fold(HomPoly::zero(&k, d + 1), |acc, &(c, m)| &acc + &mono(&k, m, c));
        let high = [
            sum(&[(2, [d + 1, 0, 0]), (-4, [1, d, 0]), (2, [1, 0, d])]),
            sum(&[(-4, [d, 1, 0]), (2, [0, d + 1, 0]), (2, [0, 1, d])]),
            sum(&[(-4, [d, 0, 1]), (-4, [0, d, 1]), (-1, [0, 0, d + 1])]),
        ];
        results.entry("(-4 for -4^(d+1)) BzMxNy degree d+1").or_default().push((d, verify_syzygy(&high, &p).unwrap()));
    }
    let summary: Vec<String> = results
        .iter()
        .map(|(name, r)| {
            let pass: Vec<u32> = r.iter().filter(|x| x.1).map(|x| x.0).collect();
            let verdict = match pass.len() {
                0 => "fails verbatim".to_string(),
                n if n == r.len() => "holds".to_string(),
                _ => format!("holds only for d = {pass:?}"),
            };
            format!("{name} {verdict}")
        })
        .collect();
    Ok(format!("Koszul triples hold; stated triples evaluated for d = 3..6: {}", summary.join("; ")))
}

fn collinearity() -> Outcome {
    for d in 3..=6u32 {
        let k = Tower::new(d).unwrap();
        let c = FermatCurve::over(&k);
        let lines = collinear_sextactic(&c).unwrap();
        if d == 3 {
            let intra = lines.iter().filter(|l| l.is_intra_cluster()).count();
            check(lines.len() == 81 && intra == 27, || format!("d=3: {} lines, {intra} intra-cluster", lines.len()))?;
            check(lines.iter().all(|l| l.points.len() == 3), || "d=3: a line with more than 3 points".into())?;
        } else {
            let grid = grid_lines(&k).unwrap();
            check(lines.len() == 9 * d as usize, || format!("d={d}: {} lines", lines.len()))?;
            for l in &lines {
                check(l.points.len() == d as usize, || format!("d={d}: {} has {} points", l.line, l.points.len()))?;
                check(grid.iter().any(|g| g.line.proportional(&l.line)), || {
                    format!("d={d}: {} is not a grid line", l.line)
                })?;
            }
        }
    }
    Ok("d = 3: 81 lines (27 intra, 54 mixed); d = 4..6: exactly the 9d grid lines with d points each".into())
}

fn relative(cert: &[Certificate]) -> Option<FieldElement> {
    cert.iter().find_map(|c| match c {
        Certificate::Discriminant { relative, .. } => relative.clone(),
        _ => None,
    })
}

fn main_theorem() -> Outcome {
    let mut quoted_m_point_misses = Vec::new();
    for d in 3..=8u32 {
        let c = FermatCurve::new(d).unwrap();
        let k = c.tower();
        let di = d as i64;
        // relative discriminants (b^2 - 4ac) / b^2 with the quoted b
        let b_rel = k.from_ratio(48 * (di - 3) * (di - 1).pow(2) * (2 * di - 1), (2 * (di - 2) * (5 * di - 3)).pow(2));
        let m_rel = k.from_ratio(48 * di * (2 * di - 1) * (di - 1).pow(2), (8 * di * (di - 2)).pow(2));
        check(48 * di * (2 * di - 1) * (di - 1).pow(2) != 0, || format!("d={d}: M discriminant vanishes"))?;
        let t_pow = k.t_pow(di - 1);
        for gl in grid_lines(k).unwrap() {
            let label = gl.label.as_str();
            let t = tangent_concurrency(&c, &gl.line).map_err(|e| format!("d={d} {label}: {e}"))?;
            check(t.common_points == 1, || format!("d={d} {label}: tangents not concurrent"))?;
            let q = t.common_point.clone().unwrap();
            check(t.fixed_line.vanishes_at(&q), || format!("d={d} {label}: common point off the fixed line"))?;
            if label == "Bx[j=0]" {
                let want = ProjPoint::from_i64(k, [0, -1, 1]).unwrap();
                check(q == want, || format!("d={d}: V(y-z) tangents meet at {q}"))?;
            }
            if let Some(kk) = label.strip_prefix("Mx[k=").and_then(|s| s.strip_suffix(']')) {
                let kk: i64 = kk.parse().unwrap();
                let mag = &k.u_pow(kk) * &t_pow;
                let quoted = ProjPoint::new([k.zero(), -mag.clone(), k.one()]).unwrap();
                let corrected = ProjPoint::new([k.zero(), mag, k.one()]).unwrap();
                check(q == corrected, || format!("d={d} {label}: tangents meet at {q}"))?;
                if q != quoted {
                    quoted_m_point_misses.push((d, kk));
                }
            }

            let r = conic_common_points(&c, &gl.line).map_err(|e| format!("d={d} {label}: {e}"))?;
            let rel = relative(&r.certificates);
            if label.starts_with('B') {
                check(rel.as_ref() == Some(&b_rel), || format!("d={d} {label}: relative discriminant {rel:?}"))?;
                if d == 3 {
                    check(r.common_points == 1, || format!("d=3 {label}: {} common points", r.common_points))?;
                    let tangent =
                        r.certificates.iter().any(|c| matches!(c, Certificate::DoubleRoot { multiplicity: 2, .. }));
                    check(tangent, || format!("d=3 {label}: fixed line not tangent"))?;
                    if let Some(j) = label.strip_prefix("Bz[j=").and_then(|s| s.strip_suffix(']')) {
                        let j: i64 = j.parse().unwrap();
                        let want = ProjPoint::new([k.one(), k.zeta_pow(-j), k.zero()]).unwrap();
                        check(r.common_point.as_ref() == Some(&want), || {
                            format!("d=3 {label}: point {:?}", r.common_point)
                        })?;
                    }
                } else {
                    check(r.common_points == 2, || format!("d={d} {label}: {} common points", r.common_points))?;
                }
            } else {
                check(rel.as_ref() == Some(&m_rel), || format!("d={d} {label}: relative discriminant {rel:?}"))?;
                check(r.common_points == 2, || format!("d={d} {label}: {} common points", r.common_points))?;
            }
        }
    }
    if quoted_m_point_misses.is_empty() {
        Ok("all 9d grid lines certified, d = 3..8".into())
    } else {
        Err(format!(
            "all 9d grid lines certified for d = 3..8 (tangent concurrency, 2 conic points, 1 tangent point on d = 3 B-lines, \
             discriminants as stated), but the quoted M_x point (0 : -u^k 2^((d-1)/d) : 1) is wrong for all {} (d, k); \
             the tangents meet at (0 : u^k 2^((d-1)/d) : 1)",
            quoted_m_point_misses.len()
        ))
    }
}

fn invariant_intersections() -> Outcome {
    let mut orbits = 0;
    for d in 3..=6u32 {
        let c = FermatCurve::new(d).unwrap();
        for n in [1, 2] {
            let s = invariant_intersection_suite(&c, n).unwrap();
            check(s.failures.is_empty(), || format!("d={d} n={n}: {} failures", s.failures.len()))?;
            orbits += s.orbits_checked;
        }
    }
    Ok(format!("{orbits} (automorphism, orbit) checks over all homologies and special points, n = 1, 2, d = 3..6"))
}

fn oracle_equivalence() -> Outcome {
    let mut total = 0;
    for d in 3..=5u32 {
        let mut rng = ChaCha8Rng::seed_from_u64(100 + d as u64);
        let special = FermatCurve::new(d).unwrap();
        let special = Arc::new(special);
        let mut points: Vec<(Arc<FermatCurve>, ProjPoint)> = common::generic_points(d, 6, d as u64);
        points.extend(special.inflection_points().into_iter().take(2).map(|p| (special.clone(), p)));
        for s in [(Cluster::Z, 0, 1), (Cluster::X, 1, 3)] {
            points.push((special.clone(), special.sextactic_point(s.0, s.1, s.2).unwrap().point));
        }
        let mut cases = 0;
        let mut mults = BTreeMap::new();
        for round in 0.. {
            if cases >= 60 {
                break;
            }
            let (curve, p) = &points[round % points.len()];
            let g = match round / points.len() % 6 {
                0 => common::line_through(p, &mut rng),
                1 => curve.tangent_line(p).unwrap(),
                2 => common::conic_through(p, &mut rng),
                3 => &curve.tangent_line(p).unwrap() * &common::line_through(p, &mut rng),
                4 => {
                    let t = curve.tangent_line(p).unwrap();
                    match curve.osculating_conic_closed(p) {
                        Ok(o) => &o + &(&t * &t).scale_i64(rand::Rng::gen_range(&mut rng, 1..5)),
                        Err(_) => &t * &common::line_through(p, &mut rng),
                    }
                }
                _ => match curve.osculating_conic_closed(p) {
                    Ok(o) => o,
                    Err(_) => common::conic_through(p, &mut rng),
                },
            };
            let a = int_mult(curve.poly(), &g, p).map_err(|e| format!("d={d}: int_mult {e}"))?;
            let b = resultant_order(curve.poly(), &g, p, round as u64).map_err(|e| format!("d={d}: resultant {e}"))?;
            check(a == b.order, || format!("d={d}: int_mult {a} vs resultant {} for {g} at {p}", b.order))?;
            *mults.entry(a).or_insert(0) += 1;
            cases += 1;
        }
        check(mults.len() >= 3, || format!("d={d}: multiplicities too uniform {mults:?}"))?;
        total += cases;
    }
    Ok(format!("{total} (curve, point) cases agree, d = 3..5"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("Hessian identity", hessian_identity),
        ("inflection points", inflection_suite),
        ("2-Hessian identity", two_hessian_identity),
        ("sextactic points", sextactic_suite),
        ("Cayley cross-check", cayley_cross_check),
        ("censuses", censuses),
        ("freeness verdicts", freeness_verdicts),
        ("syzygy verification", syzygies),
        ("collinearity", collinearity),
        ("concurrency on grid lines", main_theorem),
        ("invariant intersections", invariant_intersections),
        ("oracle equivalence", oracle_equivalence),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name}: PASS [{secs:.1}s] {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL [{secs:.1}s] {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
