//! Monomial automorphisms of the Fermat curve, the lines they fix
//! pointwise, and exact certificates for the common points of osculating
//! curves along orbits on those lines.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fermat::{FermatCurve, SextacticPoint};
use crate::poly::{meet, BinaryForm, HomPoly, LineParam, ProjPoint};
use crate::tower::{FieldElement, Tower};

/// `(x_0 : x_1 : x_2) -> (zeta^e_0 x_p0 : zeta^e_1 x_p1 : zeta^e_2 x_p2)`,
/// normalized so that `e_2 = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Automorphism {
    d: u32,
    perm: [usize; 3],
    exps: [u32; 3],
}

impl Automorphism {
    pub fn new(d: u32, perm: [usize; 3], exps: [i64; 3]) -> Result<Self> {
        let mut seen = [false; 3];
        for &p in &perm {
            if p > 2 || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidArgument(format!("{perm:?} is not a permutation")));
            }
        }
        let dd = d as i64;
        let e2 = exps[2];
        Ok(Automorphism { d, perm, exps: exps.map(|e| (e - e2).rem_euclid(dd) as u32) })
    }

    pub fn identity(d: u32) -> Self {
        Automorphism { d, perm: [0, 1, 2], exps: [0; 3] }
    }

    /// `(x:y:z) -> (zeta x : y : z)`.
    pub fn rho(d: u32) -> Self {
        Automorphism { d, perm: [0, 1, 2], exps: [1, 0, 0] }
    }

    /// `(x:y:z) -> (y : x : z)`.
    pub fn phi(d: u32) -> Self {
        Automorphism { d, perm: [1, 0, 2], exps: [0; 3] }
    }

    /// `(x:y:z) -> (z : y : x)`.
    pub fn psi(d: u32) -> Self {
        Automorphism { d, perm: [2, 1, 0], exps: [0; 3] }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn perm(&self) -> [usize; 3] {
        self.perm
    }

    pub fn exps(&self) -> [u32; 3] {
        self.exps
    }

    pub fn is_identity(&self) -> bool {
        *self == Automorphism::identity(self.d)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        assert_eq!(self.d, other.d, "automorphisms of different curves");
        let perm = self.perm.map(|p| other.perm[p]);
        let exps = [0, 1, 2].map(|i| (self.exps[i] + other.exps[self.perm[i]]) as i64);
        Automorphism::new(self.d, perm, exps).expect("composition of permutations")
    }

    pub fn inverse(&self) -> Automorphism {
        let mut perm = [0; 3];
        let mut exps = [0i64; 3];
        for i in 0..3 {
            // x'_i = zeta^e_i x_{p_i}, so x_{p_i} = zeta^-e_i x'_i
            perm[self.perm[i]] = i;
            exps[self.perm[i]] = -(self.exps[i] as i64);
        }
        Automorphism::new(self.d, perm, exps).expect("inverse permutation")
    }

    pub fn order(&self) -> usize {
        let mut g = *self;
        let mut n = 1;
        while !g.is_identity() {
            g = g.compose(self);
            n += 1;
        }
        n
    }

    pub fn matrix(&self, tower: &Arc<Tower>) -> [[FieldElement; 3]; 3] {
        assert_eq!(tower.d(), self.d, "automorphism over a different field");
        std::array::from_fn(|i| {
            std::array::from_fn(|j| if self.perm[i] == j { tower.zeta_pow(self.exps[i] as i64) } else { tower.zero() })
        })
    }

    pub fn apply(&self, p: &ProjPoint) -> Result<ProjPoint> {
        p.transform(&self.matrix(p.tower()))
    }

    /// `f ∘ g`.
    pub fn pull_back(&self, f: &HomPoly) -> HomPoly {
        f.compose_linear(&self.matrix(f.tower()))
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const VARS: [&str; 3] = ["x", "y", "z"];
        let parts: Vec<String> = (0..3)
            .map(|i| {
                let v = VARS[self.perm[i]];
                match self.exps[i] {
                    0 => v.to_string(),
                    1 => format!("zeta {v}"),
                    e => format!("zeta^{e} {v}"),
                }
            })
            .collect();
        write!(f, "(x:y:z) -> ({})", parts.join(" : "))
    }
}

/// The `6d^2` monomial automorphisms: coordinate permutations composed with
/// `diag(zeta^a, zeta^b, 1)`.
pub fn group_elements(d: u32) -> Vec<Automorphism> {
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::with_capacity(6 * (d * d) as usize);
    for perm in perms {
        for a in 0..d {
            for b in 0..d {
                out.push(Automorphism { d, perm, exps: [a, b, 0] });
            }
        }
    }
    out
}

/// The line fixed pointwise by `g`: the eigenspace of an eigenvalue of
/// geometric multiplicity two. `None` for the identity and for elements
/// without such an eigenvalue.
pub fn fixed_line(g: &Automorphism, tower: &Arc<Tower>) -> Result<Option<HomPoly>> {
    if g.is_identity() {
        return Ok(None);
    }
    let m = g.matrix(tower);
    // eigenvalues of a monomial matrix with a repeated eigenvalue are 2d-th roots of unity
    for e in 0..2 * g.d as i64 {
        let lambda = tower.u_pow(e);
        let mut n = m.clone();
        for (i, row) in n.iter_mut().enumerate() {
            row[i] = &row[i] - &lambda;
        }
        if rank_le_one(&n) {
            let row = n.iter().find(|r| r.iter().any(|c| !c.is_zero())).expect("rank one");
            return Ok(Some(HomPoly::linear(row.clone()).canonical_line()?));
        }
    }
    Ok(None)
}

fn rank_le_one(n: &[[FieldElement; 3]; 3]) -> bool {
    for (r1, r2) in [(0, 1), (0, 2), (1, 2)] {
        for (c1, c2) in [(0, 1), (0, 2), (1, 2)] {
            let minor = &(&n[r1][c1] * &n[r2][c2]) - &(&n[r1][c2] * &n[r2][c1]);
            if !minor.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Group elements fixing a line pointwise, with that line.
pub fn homologies(tower: &Arc<Tower>) -> Result<Vec<(Automorphism, HomPoly)>> {
    let mut out = Vec::new();
    for g in group_elements(tower.d()) {
        if let Some(l) = fixed_line(&g, tower)? {
            out.push((g, l));
        }
    }
    Ok(out)
}

/// `p, g(p), g^2(p), ...` up to the first repeat.
pub fn orbit(p: &ProjPoint, g: &Automorphism) -> Result<Vec<ProjPoint>> {
    let mut out = vec![p.clone()];
    let mut q = g.apply(p)?;
    while q != *p {
        if out.len() > 6 * (g.d * g.d) as usize {
            return Err(Error::InvalidArgument("orbit does not close".into()));
        }
        out.push(q.clone());
        q = g.apply(&q)?;
    }
    Ok(out)
}

/// Osculating curve of degree `n` at `p`: the tangent line for `n = 1`,
/// the osculating conic for `n = 2` (the doubled tangent at inflection
/// points, where the conic degenerates).
pub fn osculating_curve(curve: &FermatCurve, p: &ProjPoint, n: u32) -> Result<HomPoly> {
    match n {
        1 => curve.tangent_line(p),
        2 => {
            if p.coords().iter().any(FieldElement::is_zero) {
                Ok(curve.tangent_line(p)?.pow(2))
            } else {
                curve.osculating_conic_closed(p)
            }
        }
        _ => Err(Error::InvalidArgument(format!("osculating degree {n} not supported (use 1 or 2)"))),
    }
}

/// Whether the degree-`n` osculating curves at all points of the `g`-orbit
/// of `p` cut the fixed line of `g` in the same divisor, i.e. have
/// proportional restrictions to it.
pub fn verify_invariant_intersection(curve: &FermatCurve, g: &Automorphism, p: &ProjPoint, n: u32) -> Result<bool> {
    let l = fixed_line(g, curve.tower())?.ok_or(Error::NoFixedLine)?;
    let param = LineParam::new(&l)?;
    let reference = param.restrict(&osculating_curve(curve, p, n)?);
    for q in orbit(p, g)?.iter().skip(1) {
        if !param.restrict(&osculating_curve(curve, q, n)?).proportional(&reference) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantFailure {
    pub automorphism: Automorphism,
    pub point: ProjPoint,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantSuite {
    pub osculating_degree: u32,
    pub automorphisms: usize,
    /// `(automorphism, orbit)` pairs checked.
    pub orbits_checked: usize,
    pub failures: Vec<InvariantFailure>,
}

/// Runs [`verify_invariant_intersection`] for every group element with a
/// fixed line and every orbit of inflection and sextactic points.
pub fn invariant_intersection_suite(curve: &FermatCurve, n: u32) -> Result<InvariantSuite> {
    let tower = curve.tower();
    let mut points = curve.inflection_points();
    points.extend(curve.sextactic_points()?.into_iter().map(|s| s.point));
    let mut cache: HashMap<ProjPoint, HomPoly> = HashMap::new();
    for p in &points {
        cache.insert(p.clone(), osculating_curve(curve, p, n)?);
    }
    let homs = homologies(tower)?;
    let mut orbits_checked = 0;
    let mut failures = Vec::new();
    for (g, l) in &homs {
        let param = LineParam::new(l)?;
        let mut done: HashSet<ProjPoint> = HashSet::new();
        for p in &points {
            if done.contains(p) {
                continue;
            }
            let orb = orbit(p, g)?;
            let reference = param.restrict(&cache[p]);
            let ok = orb.iter().all(|q| param.restrict(&cache[q]).proportional(&reference));
            if !ok {
                failures.push(InvariantFailure { automorphism: *g, point: p.clone() });
            }
            orbits_checked += 1;
            done.extend(orb);
        }
    }
    Ok(InvariantSuite { osculating_degree: n, automorphisms: homs.len(), orbits_checked, failures })
}

/// One exact fact backing a [`ConcurrencyReport`].
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Each member evaluated at `point`; all values zero.
    Concurrent { point: ProjPoint, values: Vec<FieldElement> },
    /// No two members are proportional.
    PairwiseDistinct { members: usize },
    /// The fixed line evaluated at `point`.
    OnFixedLine { point: ProjPoint, value: FieldElement },
    /// Every member restricts to a multiple of `restriction` on the fixed line.
    ProportionalRestrictions { restriction: BinaryForm, members: usize },
    /// `b^2 - 4ac` of the restriction, and the scale-free ratio `(b^2 - 4ac) / b^2`.
    Discriminant { value: FieldElement, relative: Option<FieldElement> },
    /// The restriction has a double root at `point`: the line is tangent
    /// to every member there.
    DoubleRoot { point: ProjPoint, multiplicity: usize },
    /// Members `Q_0, Q_1, Q_2` scaled to equal restrictions satisfy
    /// `Q_0 - Q_i = L * cofactor_i`; the cofactors meet at `crossing`,
    /// the only possible common point off `L`, and `Q_0` takes `value` there.
    OffLineExclusion { cofactors: [HomPoly; 2], crossing: ProjPoint, on_fixed_line: bool, value: FieldElement },
}

#[derive(Clone, Debug, Serialize)]
pub struct ConcurrencyReport {
    pub family: String,
    pub grid_line: HomPoly,
    pub points: Vec<SextacticPoint>,
    pub automorphism: Automorphism,
    pub automorphism_text: String,
    pub fixed_line: HomPoly,
    /// Number of distinct points common to every member.
    pub common_points: usize,
    /// The common point, when it is unique and lies in the field.
    pub common_point: Option<ProjPoint>,
    pub certificates: Vec<Certificate>,
}

struct GridOrbit {
    points: Vec<SextacticPoint>,
    g: Automorphism,
    fixed: HomPoly,
}

/// The sextactic points on `line` and a homology permuting them in one orbit.
fn grid_orbit(curve: &FermatCurve, line: &HomPoly) -> Result<GridOrbit> {
    let d = curve.d() as usize;
    let points: Vec<SextacticPoint> =
        curve.sextactic_points()?.into_iter().filter(|s| line.vanishes_at(&s.point)).collect();
    if points.len() != d {
        return Err(Error::FewerPoints { found: points.len(), expected: d });
    }
    let set: HashSet<&ProjPoint> = points.iter().map(|s| &s.point).collect();
    for (g, fixed) in homologies(curve.tower())? {
        let orb = orbit(&points[0].point, &g)?;
        if orb.len() == d && orb.iter().all(|q| set.contains(q)) {
            return Ok(GridOrbit { points, g, fixed });
        }
    }
    Err(Error::NoFixedLine)
}

fn report(family: String, grid_line: &HomPoly, orbit: GridOrbit) -> ConcurrencyReport {
    ConcurrencyReport {
        family,
        grid_line: grid_line.clone(),
        points: orbit.points,
        automorphism_text: orbit.g.to_string(),
        automorphism: orbit.g,
        fixed_line: orbit.fixed,
        common_points: 0,
        common_point: None,
        certificates: Vec::new(),
    }
}

/// Certifies that the tangents at the `d` sextactic points of a grid line
/// pass through one point, and that they are pairwise distinct there.
pub fn tangent_concurrency(curve: &FermatCurve, grid_line: &HomPoly) -> Result<ConcurrencyReport> {
    let orb = grid_orbit(curve, grid_line)?;
    let tangents: Vec<HomPoly> = orb.points.iter().map(|s| curve.tangent_line(&s.point)).collect::<Result<_>>()?;
    let q = meet(&tangents[0], &tangents[1])?;
    let values: Vec<FieldElement> = tangents.iter().map(|t| t.evaluate(&q)).collect();
    if let Some(v) = values.iter().find(|v| !v.is_zero()) {
        return Err(Error::cert("tangent misses the common point", v));
    }
    for (i, a) in tangents.iter().enumerate() {
        if tangents[i + 1..].iter().any(|b| a.proportional(b)) {
            return Err(Error::CertificationFailure { what: "two tangents coincide".into(), value: a.to_string() });
        }
    }
    let on_fixed = orb.fixed.evaluate(&q);
    let mut r =
        report(format!("tangent lines at the {} sextactic points on {grid_line}", orb.points.len()), grid_line, orb);
    r.certificates = vec![
        Certificate::Concurrent { point: q.clone(), values },
        Certificate::PairwiseDistinct { members: tangents.len() },
        Certificate::OnFixedLine { point: q.clone(), value: on_fixed },
    ];
    r.common_points = 1;
    r.common_point = Some(q);
    Ok(r)
}

/// Certifies the number of points common to the `d` hyperosculating conics
/// at the sextactic points of a grid line, without leaving the field:
/// proportional restrictions to the fixed line, the restriction's
/// discriminant, and exclusion of any common point off the fixed line.
pub fn conic_common_points(curve: &FermatCurve, grid_line: &HomPoly) -> Result<ConcurrencyReport> {
    let orb = grid_orbit(curve, grid_line)?;
    let conics: Vec<HomPoly> = orb.points.iter().map(|s| curve.hyperosculating_conic(s)).collect::<Result<_>>()?;
    let l = orb.fixed.clone();
    let param = LineParam::new(&l)?;
    let restrictions: Vec<BinaryForm> = conics.iter().map(|c| param.restrict(c)).collect();
    let r0 = &restrictions[0];
    if r0.is_zero() {
        return Err(Error::CertificationFailure {
            what: "fixed line is a component of a conic".into(),
            value: conics[0].to_string(),
        });
    }
    if let Some(i) = restrictions.iter().position(|r| !r.proportional(r0)) {
        return Err(Error::CertificationFailure {
            what: "restrictions to the fixed line differ".into(),
            value: format!("{:?} vs {:?}", restrictions[i], r0),
        });
    }
    let disc = r0.disc2()?;
    let b = r0.coeff(1);
    let relative = if b.is_zero() { None } else { Some(disc.checked_div(&(b * b))?) };
    let mut certs = vec![
        Certificate::ProportionalRestrictions { restriction: r0.clone(), members: restrictions.len() },
        Certificate::Discriminant { value: disc.clone(), relative },
    ];

    let (count, point) = if disc.is_zero() {
        let (a, b) = (r0.coeff(0), r0.coeff(1));
        let (s, t) = if a.is_zero() { (curve.tower().one(), curve.tower().zero()) } else { (-b, a.scale_i64(2)) };
        let multiplicity = r0.root_multiplicity(&s, &t)?;
        let p = param.point_at(&s, &t)?;
        certs.push(Certificate::DoubleRoot { point: p.clone(), multiplicity });
        (1, Some(p))
    } else {
        (2, None)
    };

    // scale Q_1, Q_2 so that their restrictions equal that of Q_0
    let pivot = r0.coeffs().iter().position(|c| !c.is_zero()).expect("nonzero");
    let scaled: Vec<HomPoly> = (0..3)
        .map(|i| {
            let lambda = r0.coeff(pivot).checked_div(restrictions[i].coeff(pivot))?;
            Ok(conics[i].scale(&lambda))
        })
        .collect::<Result<_>>()?;
    let mut cofactors = Vec::with_capacity(2);
    for q in &scaled[1..] {
        let diff = &scaled[0] - q;
        let cof = diff.div_linear(&l)?.ok_or_else(|| Error::CertificationFailure {
            what: "difference of conics not divisible by the fixed line".into(),
            value: diff.to_string(),
        })?;
        if cof.is_zero() {
            return Err(Error::CertificationFailure {
                what: "two conics of the family coincide".into(),
                value: q.to_string(),
            });
        }
        cofactors.push(cof);
    }
    let crossing = meet(&cofactors[0], &cofactors[1]).map_err(|_| Error::CertificationFailure {
        what: "cofactor lines coincide".into(),
        value: cofactors[0].to_string(),
    })?;
    let on_fixed_line = l.vanishes_at(&crossing);
    let value = scaled[0].evaluate(&crossing);
    if !on_fixed_line && value.is_zero() {
        return Err(Error::cert("a common point off the fixed line survives", &value));
    }
    certs.push(Certificate::OffLineExclusion {
        cofactors: [cofactors[0].clone(), cofactors[1].clone()],
        crossing,
        on_fixed_line,
        value,
    });

    let mut r = report(
        format!("hyperosculating conics at the {} sextactic points on {grid_line}", orb.points.len()),
        grid_line,
        orb,
    );
    r.common_points = count;
    r.common_point = point;
    r.certificates = certs;
    Ok(r)
}

/// Degenerate member `z * l` of the pencil spanned by two hyperosculating
/// conics at points of the same `B_z` line.
#[derive(Clone, Debug, Serialize)]
pub struct PencilCertificate {
    pub j: u32,
    pub k1: u32,
    pub k2: u32,
    /// `2d(d-2)(zeta^-j x + y) - t^-1 (d+1)(2d-3)(u^k1 + u^k2) z`.
    pub ell: HomPoly,
    /// `O_{j,k1} - O_{j,k2} = ratio * z * ell`.
    pub ratio: FieldElement,
    /// Largest-index nonzero `3x3` minor of the coefficient matrix of
    /// `O_{j,k1}, O_{j,k2}, z ell`, if any.
    pub nonzero_minor: Option<FieldElement>,
    /// Discriminant of `O_{j,k1}` restricted to `V(ell)`.
    pub residual_discriminant: FieldElement,
    /// `O_{j,k1}` at `V(ell) ∩ V(z)`.
    pub value_at_corner: FieldElement,
}

pub fn pencil_degenerate(curve: &FermatCurve, j: u32, k1: u32, k2: u32) -> Result<PencilCertificate> {
    let d = curve.d();
    for k in [k1, k2] {
        if k % 2 == 0 || k >= 2 * d {
            return Err(Error::InvalidArgument(format!("k = {k} must be odd and below {}", 2 * d)));
        }
    }
    if k1 == k2 {
        return Err(Error::InvalidArgument("a pencil needs two distinct conics".into()));
    }
    if j >= d {
        return Err(Error::InvalidArgument(format!("j = {j} must be below {d}")));
    }
    curve.sextactic_point(crate::fermat::Cluster::Z, j, k1)?;
    let tw = curve.tower();
    let di = d as i64;
    let o1 = curve.hyperosculating_conic_z(j, k1);
    let o2 = curve.hyperosculating_conic_z(j, k2);
    let a = 2 * di * (di - 2);
    let zc = &(&tw.u_pow(k1 as i64) + &tw.u_pow(k2 as i64)) * &tw.t_pow(-1);
    let ell = HomPoly::linear([
        tw.zeta_pow(-(j as i64)).scale_i64(a),
        tw.from_i64(a),
        zc.scale_i64(-(di + 1) * (2 * di - 3)),
    ]);
    let z = HomPoly::var(tw, 2);
    let zl = &z * &ell;

    let monos = [[2, 0, 0], [0, 2, 0], [0, 0, 2], [1, 1, 0], [1, 0, 1], [0, 1, 1]];
    let rows: [Vec<FieldElement>; 3] = [&o1, &o2, &zl].map(|p| monos.iter().map(|&e| p.coeff(e)).collect());
    let mut nonzero_minor = None;
    for c1 in 0..6 {
        for c2 in c1 + 1..6 {
            for c3 in c2 + 1..6 {
                let m = crate::poly::det3(&[
                    [rows[0][c1].clone(), rows[0][c2].clone(), rows[0][c3].clone()],
                    [rows[1][c1].clone(), rows[1][c2].clone(), rows[1][c3].clone()],
                    [rows[2][c1].clone(), rows[2][c2].clone(), rows[2][c3].clone()],
                ]);
                if !m.is_zero() {
                    nonzero_minor = Some(m);
                }
            }
        }
    }
    if let Some(m) = &nonzero_minor {
        return Err(Error::cert("z * ell is not in the pencil", m));
    }
    let diff = &o1 - &o2;
    let ratio = diff.ratio_to(&zl).ok_or_else(|| Error::CertificationFailure {
        what: "difference of the two conics is not a multiple of z * ell".into(),
        value: diff.to_string(),
    })?;
    let residual = LineParam::new(&ell)?.restrict(&o1);
    let residual_discriminant = residual.disc2()?;
    if residual_discriminant.is_zero() {
        return Err(Error::cert("the two residual points coincide", &residual_discriminant));
    }
    let corner = meet(&ell, &z)?;
    let value_at_corner = o1.evaluate(&corner);
    if value_at_corner.is_zero() {
        return Err(Error::cert("a residual point lies on z = 0", &value_at_corner));
    }
    Ok(PencilCertificate { j, k1, k2, ell, ratio, nonzero_minor, residual_discriminant, value_at_corner })
}
