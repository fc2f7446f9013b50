//! Line arrangements attached to the Fermat curve, their singularity
//! censuses, Tjurina totals and the freeness criterion, plus the exhaustive
//! search for lines through three or more sextactic points.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use num_integer::Roots;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fermat::{FermatCurve, SextacticPoint};
use crate::poly::{det3, meet, HomPoly, LineParam, ProjPoint};
use crate::tower::{FieldElement, Tower};

/// Largest degree accepted by [`collinear_sextactic`].
pub const COLLINEAR_CAP: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    /// Inflection tangents, `(x^d+y^d)(y^d+z^d)(z^d+x^d)`.
    A,
    /// `(x^d-y^d)(y^d-z^d)(z^d-x^d)`.
    B,
    /// `(z^d+2y^d)(x^d+2z^d)(y^d+2x^d)`.
    M,
    /// `(y^d+2z^d)(z^d+2x^d)(x^d+2y^d)`.
    N,
}

/// Subscript of a component: the variable missing from its binary form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    fn parse(c: char) -> Option<Axis> {
        match c {
            'x' => Some(Axis::X),
            'y' => Some(Axis::Y),
            'z' => Some(Axis::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

impl Family {
    /// Components in the order of the family's defining product.
    fn axes(self) -> [Axis; 3] {
        match self {
            Family::A | Family::B => [Axis::Z, Axis::X, Axis::Y],
            Family::M | Family::N => [Axis::X, Axis::Y, Axis::Z],
        }
    }

    /// `(a, b)` such that the component's lines are `v_a - c v_b`.
    fn variables(self, axis: Axis) -> (usize, usize) {
        match (self, axis) {
            (Family::A | Family::B | Family::N, Axis::Z) => (0, 1),
            (Family::A | Family::B | Family::N, Axis::X) => (1, 2),
            (Family::A | Family::B | Family::N, Axis::Y) => (2, 0),
            (Family::M, Axis::X) => (2, 1),
            (Family::M, Axis::Y) => (0, 2),
            (Family::M, Axis::Z) => (1, 0),
        }
    }

    fn parse(c: char) -> Option<Family> {
        match c {
            'A' => Some(Family::A),
            'B' => Some(Family::B),
            'M' => Some(Family::M),
            'N' => Some(Family::N),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ArrangementLine {
    pub label: String,
    pub line: HomPoly,
}

#[derive(Clone, Debug, Serialize)]
pub struct LineArrangement {
    label: String,
    lines: Vec<ArrangementLine>,
}

/// The `d` lines of one component, e.g. `B_z = {x - zeta^j y}`.
pub fn component(tower: &Arc<Tower>, family: Family, axis: Axis) -> Result<Vec<ArrangementLine>> {
    if matches!(family, Family::M | Family::N) && !tower.is_standard() {
        return Err(Error::NeedsStandardTower);
    }
    let d = tower.d() as i64;
    let (a, b) = family.variables(axis);
    let (params, name): (Vec<i64>, &str) = match family {
        Family::B => ((0..d).collect(), "j"),
        _ => ((1..2 * d).step_by(2).collect(), "k"),
    };
    params
        .into_iter()
        .map(|p| {
            let c = match family {
                Family::A => tower.u_pow(p),
                Family::B => tower.zeta_pow(p),
                Family::M | Family::N => tower.monomial(-p, 1),
            };
            let mut coeffs = [tower.zero(), tower.zero(), tower.zero()];
            coeffs[a] = tower.one();
            coeffs[b] = -c;
            Ok(ArrangementLine {
                label: format!("{family}{axis}[{name}={p}]"),
                line: HomPoly::linear(coeffs).canonical_line()?,
            })
        })
        .collect()
}

/// `V(x)`, `V(y)`, `V(z)`.
pub fn triangle(tower: &Arc<Tower>) -> Vec<ArrangementLine> {
    ["x", "y", "z"]
        .iter()
        .enumerate()
        .map(|(i, name)| ArrangementLine { label: name.to_string(), line: HomPoly::var(tower, i) })
        .collect()
}

/// The `9d` lines of `B`, `M` and `N`, each carrying `d` sextactic points.
pub fn grid_lines(tower: &Arc<Tower>) -> Result<Vec<ArrangementLine>> {
    let mut out = Vec::with_capacity(9 * tower.d() as usize);
    for family in [Family::B, Family::M, Family::N] {
        for axis in family.axes() {
            out.extend(component(tower, family, axis)?);
        }
    }
    Ok(out)
}

/// Parses a label such as `B`, `BzMxNy`, `xyz+M` or `F+BzMxNy` into its
/// lines and whether the Fermat curve itself is part of the arrangement.
pub fn parse_label(label: &str, tower: &Arc<Tower>) -> Result<(LineArrangement, bool)> {
    let unknown = || Error::UnknownArrangement(label.to_string());
    let mut lines = Vec::new();
    let mut with_curve = false;
    for token in label.split('+').map(str::trim) {
        match token {
            "" => return Err(unknown()),
            "F" => {
                if with_curve {
                    return Err(unknown());
                }
                with_curve = true;
            }
            "xyz" | "triangle" => lines.extend(triangle(tower)),
            _ => {
                let chars: Vec<char> = token.chars().collect();
                let mut i = 0;
                while i < chars.len() {
                    let family = Family::parse(chars[i]).ok_or_else(unknown)?;
                    i += 1;
                    match chars.get(i).and_then(|&c| Axis::parse(c)) {
                        Some(axis) => {
                            lines.extend(component(tower, family, axis)?);
                            i += 1;
                        }
                        None => {
                            for axis in family.axes() {
                                lines.extend(component(tower, family, axis)?);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok((LineArrangement::from_lines(label, lines)?, with_curve))
}

impl LineArrangement {
    /// Lines only; a label mentioning `F` is rejected here, see [`parse_label`].
    pub fn build(label: &str, tower: &Arc<Tower>) -> Result<Self> {
        match parse_label(label, tower)? {
            (arr, false) => Ok(arr),
            (_, true) => Err(Error::UnknownArrangement(label.to_string())),
        }
    }

    pub fn from_lines(label: &str, lines: Vec<ArrangementLine>) -> Result<Self> {
        if lines.is_empty() {
            return Err(Error::InvalidArgument("empty arrangement".into()));
        }
        for (i, l) in lines.iter().enumerate() {
            if l.line.deg() != 1 || l.line.is_zero() {
                return Err(Error::WrongDegree { expected: "nonzero linear form", got: l.line.deg() });
            }
            if let Some(prev) = lines[..i].iter().find(|m| m.line.proportional(&l.line)) {
                return Err(Error::InvalidArgument(format!("line {} repeats {}", l.label, prev.label)));
            }
        }
        Ok(LineArrangement { label: label.to_string(), lines })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn lines(&self) -> &[ArrangementLine] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn tower(&self) -> &Arc<Tower> {
        self.lines[0].line.tower()
    }

    /// Product of all the linear forms.
    pub fn product(&self) -> HomPoly {
        let mut acc = HomPoly::constant(self.tower().one());
        for l in &self.lines {
            acc = &acc * &l.line;
        }
        acc
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusEntry {
    pub point: ProjPoint,
    /// Number of arrangement members through the point, the curve included.
    pub multiplicity: u32,
    /// Indices of the lines through the point.
    pub lines: Vec<usize>,
    pub on_curve: bool,
    pub ordinary: bool,
}

/// All singular points of the arrangement, optionally together with the
/// Fermat curve `curve` (which must live over the same field).
///
/// Entries come in the order their first line pair is met; curve-only
/// crossings follow, line by line.
pub fn census(arr: &LineArrangement, curve: Option<&FermatCurve>) -> Result<Vec<CensusEntry>> {
    let n = arr.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let points: Vec<ProjPoint> =
        pairs.par_iter().map(|&(i, j)| meet(&arr.lines[i].line, &arr.lines[j].line)).collect::<Result<_>>()?;

    let mut index: HashMap<ProjPoint, usize> = HashMap::new();
    let mut entries: Vec<CensusEntry> = Vec::new();
    let mut pair_counts: Vec<usize> = Vec::new();
    for p in points {
        match index.get(&p) {
            Some(&e) => pair_counts[e] += 1,
            None => {
                let through: Vec<usize> = (0..n).filter(|&l| arr.lines[l].line.vanishes_at(&p)).collect();
                index.insert(p.clone(), entries.len());
                entries.push(CensusEntry {
                    point: p,
                    multiplicity: through.len() as u32,
                    lines: through,
                    on_curve: false,
                    ordinary: true,
                });
                pair_counts.push(1);
            }
        }
    }
    for (e, count) in entries.iter().zip(&pair_counts) {
        let m = e.lines.len();
        debug_assert_eq!(m * (m - 1) / 2, *count, "pair count at {}", e.point);
    }

    if let Some(curve) = curve {
        add_curve(arr, curve, &mut entries, &mut index)?;
    }
    Ok(entries)
}

fn add_curve(
    arr: &LineArrangement,
    curve: &FermatCurve,
    entries: &mut Vec<CensusEntry>,
    index: &mut HashMap<ProjPoint, usize>,
) -> Result<()> {
    let f = curve.poly();
    let d = curve.d();
    let mut candidates: Vec<ProjPoint> = curve.inflection_points();
    if curve.tower().is_standard() {
        candidates.extend(curve.sextactic_points()?.into_iter().map(|s| s.point));
    }
    candidates.extend(entries.iter().map(|e| e.point.clone()));
    let mut seen = HashSet::new();
    candidates.retain(|p| curve.contains(p) && seen.insert(p.clone()));

    // tangent multiplicity of each line at each curve point it meets
    let mut contact: BTreeMap<usize, Vec<(ProjPoint, usize)>> = BTreeMap::new();
    for (li, l) in arr.lines.iter().enumerate() {
        let param = LineParam::new(&l.line)?;
        let form = param.restrict(f);
        let mut found = 0;
        for p in candidates.iter().filter(|p| l.line.vanishes_at(p)) {
            let (s, t) = param.params_of(p);
            let m = form.root_multiplicity(&s, &t)?;
            found += m;
            contact.entry(li).or_default().push((p.clone(), m));
        }
        if found as u32 != d {
            return Err(Error::UnresolvedCurveIntersection { line: l.label.clone(), found: found as u32, expected: d });
        }
    }
    for (li, hits) in contact {
        for (p, m) in hits {
            let e = match index.get(&p) {
                Some(&e) => e,
                None => {
                    index.insert(p.clone(), entries.len());
                    entries.push(CensusEntry {
                        point: p.clone(),
                        multiplicity: 1,
                        lines: vec![li],
                        on_curve: false,
                        ordinary: true,
                    });
                    entries.len() - 1
                }
            };
            let entry = &mut entries[e];
            if !entry.on_curve {
                entry.on_curve = true;
                entry.multiplicity += 1;
            }
            // a line tangent to the curve shares its direction
            if m > 1 {
                entry.ordinary = false;
            }
        }
    }
    Ok(())
}

/// `{multiplicity: number of points}`.
pub fn multiplicity_profile(entries: &[CensusEntry]) -> BTreeMap<u32, usize> {
    let mut out = BTreeMap::new();
    for e in entries {
        *out.entry(e.multiplicity).or_insert(0) += 1;
    }
    out
}

/// Total Tjurina number `sum (m-1)^2` of an arrangement with ordinary
/// singularities only.
pub fn tjurina_total(entries: &[CensusEntry]) -> Result<u64> {
    entries.iter().try_fold(0u64, |acc, e| {
        if !e.ordinary {
            return Err(Error::NonOrdinary(e.point.clone()));
        }
        let m = e.multiplicity as u64 - 1;
        Ok(acc + m * m)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// Outcome of the quadratic freeness criterion
/// `r^2 - (D-1) r + (D-1)^2 = tau`, `r <= (D-1)/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessVerdict {
    pub degree_hat: u64,
    pub tau: u64,
    /// Constant term `(D-1)^2 - tau` of the quadratic in `r`.
    pub constant_term: i128,
    pub discriminant: i128,
    pub discriminant_sign: Sign,
    pub exponents: Option<(u64, u64)>,
    pub free: bool,
}

pub fn freeness_test(degree_hat: u64, tau: u64) -> FreenessVerdict {
    let dm1 = degree_hat as i128 - 1;
    let constant_term = dm1 * dm1 - tau as i128;
    let discriminant = dm1 * dm1 - 4 * constant_term;
    let discriminant_sign = match discriminant.signum() {
        -1 => Sign::Negative,
        0 => Sign::Zero,
        _ => Sign::Positive,
    };
    let mut exponents = None;
    if discriminant >= 0 {
        let s = discriminant.sqrt();
        if s * s == discriminant && (dm1 - s) % 2 == 0 && dm1 >= s {
            let r = ((dm1 - s) / 2) as u64;
            exponents = Some((r, degree_hat - 1 - r));
        }
    }
    FreenessVerdict {
        degree_hat,
        tau,
        constant_term,
        discriminant,
        discriminant_sign,
        exponents,
        free: exponents.is_some(),
    }
}

/// Whether `a P_x + b P_y + c P_z = 0`.
pub fn verify_syzygy(triple: &[HomPoly; 3], p: &HomPoly) -> Result<bool> {
    let grad = p.gradient();
    let mut acc: Option<HomPoly> = None;
    for (a, g) in triple.iter().zip(&grad) {
        if a.is_zero() || g.is_zero() {
            continue;
        }
        let term = a.try_mul(g)?;
        acc = Some(match acc {
            None => term,
            Some(s) => s.try_add(&term)?,
        });
    }
    Ok(acc.is_none_or(|s| s.is_zero()))
}

/// The Koszul syzygy `(P_y, -P_x, 0)`.
pub fn koszul_triple(p: &HomPoly) -> [HomPoly; 3] {
    [p.partial(1), p.partial(0).neg(), HomPoly::zero(p.tower(), p.deg().saturating_sub(1))]
}

fn int_poly(tower: &Arc<Tower>, deg: u32, terms: &[(i64, [u32; 3])]) -> HomPoly {
    HomPoly::from_terms(tower, deg, terms.iter().map(|(c, e)| (*e, tower.from_i64(*c)))).expect("homogeneous")
}

/// `(x^d - y^d)(z^d + 2y^d)(z^d + 2x^d)`.
pub fn bzmxny_polynomial(tower: &Arc<Tower>) -> HomPoly {
    let d = tower.d();
    let b = int_poly(tower, d, &[(1, [d, 0, 0]), (-1, [0, d, 0])]);
    let m = int_poly(tower, d, &[(1, [0, 0, d]), (2, [0, d, 0])]);
    let n = int_poly(tower, d, &[(1, [0, 0, d]), (2, [d, 0, 0])]);
    &(&b * &m) * &n
}

/// A syzygy triple as printed alongside a free arrangement, to be checked
/// against that arrangement's polynomial.
#[derive(Clone, Debug)]
pub struct StatedSyzygy {
    pub name: &'static str,
    pub triple: [HomPoly; 3],
    pub polynomial: HomPoly,
}

/// The generator triples printed for `B_z M_x N_y` and `F B_z M_x N_y`,
/// transcribed verbatim (including the coefficient `-4^(d+1)`).
pub fn stated_syzygies(tower: &Arc<Tower>) -> Vec<StatedSyzygy> {
    let d = tower.d();
    let big = 4i64.pow(d + 1);
    let bmn = bzmxny_polynomial(tower);
    let fbmn = &FermatCurve::over(tower).poly().clone() * &bmn;
    let e = d - 1;
    vec![
        StatedSyzygy {
            name: "BzMxNy degree d+1",
            triple: [
                int_poly(tower, d + 1, &[(2, [d + 1, 0, 0]), (-4, [1, d, 0]), (2, [1, 0, d])]),
                int_poly(tower, d + 1, &[(-4, [d, 1, 0]), (2, [0, d + 1, 0]), (2, [0, 1, d])]),
                int_poly(tower, d + 1, &[(-big, [d, 0, 1]), (-big, [0, d, 1]), (-1, [0, 0, d + 1])]),
            ],
            polynomial: bmn.clone(),
        },
        StatedSyzygy {
            name: "BzMxNy degree 2d-2",
            triple: [
                int_poly(tower, 2 * e, &[(2, [e, e, 0])]),
                int_poly(tower, 2 * e, &[(-1, [0, e, e])]),
                int_poly(tower, 2 * e, &[(-1, [e, 0, e])]),
            ],
            polynomial: bmn,
        },
        StatedSyzygy {
            name: "F BzMxNy degree 2d+1",
            triple: [
                int_poly(
                    tower,
                    2 * d + 1,
                    &[
                        (2, [2 * d + 1, 0, 0]),
                        (-6, [1, 2 * d, 0]),
                        (6, [d + 1, 0, d]),
                        (-6, [1, d, d]),
                        (3, [1, 0, 2 * d]),
                    ],
                ),
                int_poly(
                    tower,
                    2 * d + 1,
                    &[
                        (-6, [2 * d, 1, 0]),
                        (2, [0, 2 * d + 1, 0]),
                        (-6, [d, 1, d]),
                        (6, [0, d + 1, d]),
                        (3, [0, 1, 2 * d]),
                    ],
                ),
                int_poly(
                    tower,
                    2 * d + 1,
                    &[
                        (-6, [2 * d, 0, 1]),
                        (-6, [0, 2 * d, 1]),
                        (-6, [d, 0, d + 1]),
                        (-6, [0, d, d + 1]),
                        (-1, [0, 0, 2 * d + 1]),
                    ],
                ),
            ],
            polynomial: fbmn.clone(),
        },
        StatedSyzygy {
            name: "F BzMxNy degree 2d-2",
            triple: [
                int_poly(tower, 2 * e, &[(-1, [0, e, e])]),
                int_poly(tower, 2 * e, &[(-1, [e, 0, e])]),
                int_poly(tower, 2 * e, &[(2, [e, e, 0])]),
            ],
            polynomial: fbmn,
        },
    ]
}

/// A line through at least three sextactic points.
#[derive(Clone, Debug, Serialize)]
pub struct CollinearLine {
    pub line: HomPoly,
    pub points: Vec<SextacticPoint>,
}

impl CollinearLine {
    pub fn is_intra_cluster(&self) -> bool {
        self.points.windows(2).all(|w| w[0].cluster == w[1].cluster)
    }
}

/// Integer normal forms of `u^a t^b`, used to test `3x3` determinants of
/// points whose coordinates are all of that shape.
struct MonomialTable {
    two_d: usize,
    max_b: usize,
    dim: usize,
    /// `rows[a * (max_b + 1) + b]`.
    rows: Vec<Vec<i64>>,
}

impl MonomialTable {
    fn new(tower: &Arc<Tower>, max_b: usize) -> Option<Self> {
        let two_d = 2 * tower.d() as usize;
        let (phi, td) = (tower.phi(), tower.t_degree());
        let mut rows = Vec::with_capacity(two_d * (max_b + 1));
        for a in 0..two_d {
            for b in 0..=max_b {
                let e = tower.monomial(a as i64, b as i64);
                let mut row = Vec::with_capacity(phi * td);
                for i in 0..phi {
                    for j in 0..td {
                        let c = e.coeff(i, j);
                        if !c.is_integer() {
                            return None;
                        }
                        row.push(i64::try_from(c.to_integer()).ok()?);
                    }
                }
                rows.push(row);
            }
        }
        Some(MonomialTable { two_d, max_b, dim: phi * td, rows })
    }

    /// Exponents `(a, b)` of `u^a t^b` for the unnormalized coordinates
    /// `(zeta^j, 1, u^-k t)`, permuted into the point's cluster.
    fn exponents(d: u32, s: &SextacticPoint) -> [(usize, usize); 3] {
        let two_d = 2 * d as usize;
        let base = [(2 * s.j as usize % two_d, 0), (0, 0), (two_d - s.k as usize, 1)];
        s.cluster.permutation().map(|i| base[i])
    }

    fn det_is_zero(&self, rows: [&[(usize, usize); 3]; 3], acc: &mut [i64]) -> bool {
        const PERMS: [([usize; 3], i64); 6] =
            [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([0, 2, 1], -1), ([2, 1, 0], -1), ([1, 0, 2], -1)];
        acc.iter_mut().for_each(|v| *v = 0);
        for (s, sign) in PERMS {
            let (a0, b0) = rows[0][s[0]];
            let (a1, b1) = rows[1][s[1]];
            let (a2, b2) = rows[2][s[2]];
            let a = (a0 + a1 + a2) % self.two_d;
            let b = b0 + b1 + b2;
            let row = &self.rows[a * (self.max_b + 1) + b];
            for (v, r) in acc.iter_mut().zip(row) {
                *v += sign * r;
            }
        }
        acc.iter().all(|&v| v == 0)
    }
}

/// All lines through at least three of the `3d^2` sextactic points, by
/// testing every triple. Lines come sorted by their point indices in
/// [`FermatCurve::sextactic_points`] order.
pub fn collinear_sextactic(curve: &FermatCurve) -> Result<Vec<CollinearLine>> {
    collinear_sextactic_with_progress(curve, |_, _| {})
}

/// As [`collinear_sextactic`], calling `progress(done, total)` as the outer
/// loop advances (from worker threads).
pub fn collinear_sextactic_with_progress(
    curve: &FermatCurve,
    progress: impl Fn(usize, usize) + Sync,
) -> Result<Vec<CollinearLine>> {
    let d = curve.d();
    if d > COLLINEAR_CAP {
        return Err(Error::SearchCap { d, cap: COLLINEAR_CAP });
    }
    let tower = curve.tower();
    let pts = curve.sextactic_points()?;
    let n = pts.len();

    let exps: Vec<[(usize, usize); 3]> = pts.iter().map(|s| MonomialTable::exponents(d, s)).collect();
    let table = MonomialTable::new(tower, 3);

    let exact = |i: usize, j: usize, k: usize| {
        det3(&[pts[i].point.coords().clone(), pts[j].point.coords().clone(), pts[k].point.coords().clone()]).is_zero()
    };
    let done = AtomicUsize::new(0);
    let triples: Vec<[usize; 3]> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut out = Vec::new();
            let mut acc = vec![0i64; table.as_ref().map_or(0, |t| t.dim)];
            for j in i + 1..n {
                for k in j + 1..n {
                    let zero = match &table {
                        Some(t) => t.det_is_zero([&exps[i], &exps[j], &exps[k]], &mut acc),
                        None => exact(i, j, k),
                    };
                    if zero {
                        out.push([i, j, k]);
                    }
                }
            }
            progress(done.fetch_add(1, Ordering::Relaxed) + 1, n);
            out
        })
        .collect();

    // the integer fast path must agree with exact determinants
    if table.is_some() {
        if let Some(&[i, j, k]) = triples.iter().find(|&&[i, j, k]| !exact(i, j, k)) {
            return Err(Error::CertificationFailure {
                what: "collinear triple rejected by exact determinant".into(),
                value: format!("({i}, {j}, {k})"),
            });
        }
        let found: HashSet<[usize; 3]> = triples.iter().copied().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..200 {
            let mut t = [rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)];
            t.sort_unstable();
            if t[0] == t[1] || t[1] == t[2] {
                continue;
            }
            if exact(t[0], t[1], t[2]) != found.contains(&t) {
                return Err(Error::CertificationFailure {
                    what: "fast determinant disagrees with exact determinant".into(),
                    value: format!("{t:?}"),
                });
            }
        }
    }

    let mut groups: HashMap<[FieldElement; 3], (HomPoly, BTreeSet<usize>)> = HashMap::new();
    for [i, j, k] in triples {
        let line = pts[i].point.line_through(&pts[j].point)?;
        let entry = groups.entry(line.linear_coeffs()?).or_insert_with(|| (line, BTreeSet::new()));
        entry.1.extend([i, j, k]);
    }
    let mut lines: Vec<(Vec<usize>, HomPoly)> =
        groups.into_values().map(|(l, s)| (s.into_iter().collect(), l)).collect();
    lines.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(lines
        .into_iter()
        .map(|(idx, line)| CollinearLine { line, points: idx.into_iter().map(|i| pts[i].clone()).collect() })
        .collect())
}
