//! The Fermat curve `x^d + y^d + z^d` and its osculating geometry.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{det3_poly, HomPoly, ProjPoint};
use crate::tower::{FieldElement, FieldElementRepr, Tower};

/// Which coordinate plays the role of `z` in `(zeta^j : 1 : u^-k t)` after
/// cyclically permuting coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Cluster {
    /// `(zeta^j : 1 : u^-k t)`, on the lines `x = zeta^j y`.
    Z,
    /// `(1 : u^-k t : zeta^j)`.
    Y,
    /// `(u^-k t : zeta^j : 1)`.
    X,
}

impl Cluster {
    pub const ALL: [Cluster; 3] = [Cluster::Z, Cluster::Y, Cluster::X];

    /// Matrix `M` with `point = M * (zeta^j, 1, u^-k t)`.
    pub(crate) fn permutation(self) -> [usize; 3] {
        // coordinate i of the point is coordinate perm[i] of the z-cluster triple
        match self {
            Cluster::Z => [0, 1, 2],
            Cluster::Y => [1, 2, 0],
            Cluster::X => [2, 0, 1],
        }
    }
}

impl fmt::Display for Cluster {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Cluster::Z => "z",
            Cluster::Y => "y",
            Cluster::X => "x",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SextacticPoint {
    pub cluster: Cluster,
    /// Exponent of `zeta`, in `0..d`.
    pub j: u32,
    /// Odd exponent in `1..2d` of `u^-k`.
    pub k: u32,
    pub point: ProjPoint,
}

#[derive(Serialize)]
struct SextacticRepr {
    cluster: Cluster,
    j: u32,
    k: u32,
    point: [FieldElementRepr; 3],
}

impl Serialize for SextacticPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SextacticRepr { cluster: self.cluster, j: self.j, k: self.k, point: self.point.to_repr() }.serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InflectionPoint {
    /// Index of the vanishing coordinate.
    pub zero_coordinate: usize,
    pub k: u32,
    pub point: ProjPoint,
}

struct Covariants {
    hessian: HomPoly,
    hess_f: [[HomPoly; 3]; 3],
    adj_hess_f: [[HomPoly; 3]; 3],
    grad_h: [HomPoly; 3],
    hess_h: [[HomPoly; 3]; 3],
}

pub struct FermatCurve {
    tower: Arc<Tower>,
    poly: HomPoly,
    covariants: OnceLock<Covariants>,
    omega: OnceLock<HomPoly>,
    psi: OnceLock<HomPoly>,
}

impl fmt::Debug for FermatCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FermatCurve(d={}, radicand={})", self.d(), self.tower.radicand())
    }
}

fn adjugate(m: &[[HomPoly; 3]; 3]) -> [[HomPoly; 3]; 3] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let rows: Vec<usize> = (0..3).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..3).filter(|&c| c != i).collect();
            let minor = &(&m[rows[0]][cols[0]] * &m[rows[1]][cols[1]]) - &(&m[rows[0]][cols[1]] * &m[rows[1]][cols[0]]);
            if (i + j) % 2 == 0 {
                minor
            } else {
                minor.neg()
            }
        })
    })
}

fn eval_matrix(m: &[[HomPoly; 3]; 3], p: &[FieldElement; 3]) -> [[FieldElement; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| m[i][j].eval(p)))
}

impl FermatCurve {
    /// The curve over the standard field `Q(u, 2^(1/d))`.
    pub fn new(d: u32) -> Result<Self> {
        Ok(Self::over(&Tower::new(d)?))
    }

    /// The curve of degree `tower.d()` over the given field.
    pub fn over(tower: &Arc<Tower>) -> Self {
        let d = tower.d();
        let poly = HomPoly::from_terms(tower, d, [[d, 0, 0], [0, d, 0], [0, 0, d]].map(|e| (e, tower.one())))
            .expect("homogeneous");
        FermatCurve {
            tower: tower.clone(),
            poly,
            covariants: OnceLock::new(),
            omega: OnceLock::new(),
            psi: OnceLock::new(),
        }
    }

    pub fn d(&self) -> u32 {
        self.tower.d()
    }

    pub fn genus(&self) -> u32 {
        let d = self.d();
        (d - 1) * (d - 2) / 2
    }

    pub fn tower(&self) -> &Arc<Tower> {
        &self.tower
    }

    pub fn poly(&self) -> &HomPoly {
        &self.poly
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.poly.vanishes_at(p)
    }

    pub fn gradient_at(&self, p: &ProjPoint) -> [FieldElement; 3] {
        let d = self.d() as u64;
        p.coords().clone().map(|c| c.pow(d - 1).scale_i64(d as i64))
    }

    pub fn is_smooth_at(&self, p: &ProjPoint) -> bool {
        self.gradient_at(p).iter().any(|c| !c.is_zero())
    }

    fn check_point(&self, p: &ProjPoint) -> Result<()> {
        if p.tower().d() != self.d() || p.tower().radicand() != self.tower.radicand() {
            return Err(Error::DegreeMismatch { left: self.d(), right: p.tower().d() });
        }
        if !self.contains(p) {
            return Err(Error::NotOnCurve(p.clone()));
        }
        Ok(())
    }

    fn covariants(&self) -> &Covariants {
        self.covariants.get_or_init(|| {
            let hess_f = self.poly.hessian_matrix();
            let hessian = det3_poly(&hess_f);
            let adj_hess_f = adjugate(&hess_f);
            let grad_h = hessian.gradient();
            let hess_h = hessian.hessian_matrix();
            Covariants { hessian, hess_f, adj_hess_f, grad_h, hess_h }
        })
    }

    /// Hessian determinant, computed from the second partials.
    pub fn hessian(&self) -> &HomPoly {
        &self.covariants().hessian
    }

    /// `d^3 (d-1)^3 (xyz)^(d-2)`.
    pub fn hessian_closed_form(&self) -> HomPoly {
        let d = self.d() as i64;
        let c = (d * (d - 1)).pow(3);
        let e = self.d() - 2;
        HomPoly::monomial([e, e, e], self.tower.from_i64(c))
    }

    /// `sum_ij adj(Hess F)_ij (Hess H)_ij`.
    pub fn omega(&self) -> &HomPoly {
        self.omega.get_or_init(|| {
            let cv = self.covariants();
            let mut acc = HomPoly::zero(&self.tower, 0);
            for i in 0..3 {
                for j in 0..3 {
                    let term = &cv.adj_hess_f[i][j] * &cv.hess_h[i][j];
                    acc = &acc + &term;
                }
            }
            acc
        })
    }

    /// `grad H . adj(Hess F) . grad H`.
    pub fn psi(&self) -> &HomPoly {
        self.psi.get_or_init(|| {
            let cv = self.covariants();
            let mut acc = HomPoly::zero(&self.tower, 0);
            for i in 0..3 {
                for j in 0..3 {
                    let term = &(&cv.grad_h[i] * &cv.adj_hess_f[i][j]) * &cv.grad_h[j];
                    acc = &acc + &term;
                }
            }
            acc
        })
    }

    fn sigma2_dd(&self) -> HomPoly {
        let d = self.d();
        let one = self.tower.one();
        HomPoly::from_terms(&self.tower, 2 * d, [[d, d, 0], [0, d, d], [d, 0, d]].map(|e| (e, one.clone())))
            .expect("homogeneous")
    }

    /// `d^5 (d-1)^5 (d-2) (d-3) (xyz)^(d-4) (x^d y^d + y^d z^d + z^d x^d)`, zero for `d = 3`.
    pub fn omega_closed_form(&self) -> HomPoly {
        let d = self.d() as i64;
        if d == 3 {
            return HomPoly::zero(&self.tower, 5 * 3 - 12);
        }
        let c = (d * (d - 1)).pow(5) * (d - 2) * (d - 3);
        let e = (d - 4) as u32;
        &HomPoly::monomial([e, e, e], self.tower.from_i64(c)) * &self.sigma2_dd()
    }

    /// `d^8 (d-1)^8 (d-2)^2 (xyz)^(2d-6) (x^d y^d + y^d z^d + z^d x^d)`.
    pub fn psi_closed_form(&self) -> HomPoly {
        let d = self.d() as i64;
        let c = FieldElement::pow(&self.tower.from_i64(d * (d - 1)), 8).scale_i64((d - 2) * (d - 2));
        let e = (2 * d - 6) as u32;
        &HomPoly::monomial([e, e, e], c) * &self.sigma2_dd()
    }

    /// `p_x^(d-1) x + p_y^(d-1) y + p_z^(d-1) z`.
    pub fn tangent_line(&self, p: &ProjPoint) -> Result<HomPoly> {
        self.check_point(p)?;
        let d = self.d() as u64;
        Ok(HomPoly::linear(p.coords().clone().map(|c| c.pow(d - 1))))
    }

    pub fn inflection_points_labeled(&self) -> Vec<InflectionPoint> {
        let tw = &self.tower;
        let mut out = Vec::with_capacity(3 * self.d() as usize);
        for zero_coordinate in 0..3 {
            for k in (1..2 * self.d()).step_by(2) {
                let uk = tw.u_pow(k as i64);
                let coords = match zero_coordinate {
                    0 => [tw.zero(), tw.one(), uk],
                    1 => [uk, tw.zero(), tw.one()],
                    _ => [tw.one(), uk, tw.zero()],
                };
                out.push(InflectionPoint { zero_coordinate, k, point: ProjPoint::new(coords).expect("nonzero") });
            }
        }
        out
    }

    /// The `3d` points `(0:1:u^k)`, `(u^k:0:1)`, `(1:u^k:0)` with `k` odd.
    pub fn inflection_points(&self) -> Vec<ProjPoint> {
        self.inflection_points_labeled().into_iter().map(|p| p.point).collect()
    }

    /// Determinant of the rows `(w^(5d-9), w^(4d-9), w^(3d-9))` for `w = x, y, z`.
    pub fn two_hessian(&self) -> HomPoly {
        let d = self.d();
        let one = self.tower.one();
        let m: [[HomPoly; 3]; 3] = std::array::from_fn(|i| {
            std::array::from_fn(|c| {
                let mut e = [0u32; 3];
                e[i] = (5 - c as u32) * d - 9;
                HomPoly::monomial(e, one.clone())
            })
        });
        det3_poly(&m)
    }

    /// `(xyz)^(3d-9) (x^d - y^d)(y^d - z^d)(z^d - x^d)`.
    pub fn two_hessian_factored(&self) -> HomPoly {
        let e = 3 * self.d() - 9;
        let mut acc = HomPoly::monomial([e, e, e], self.tower.one());
        for (a, b) in [(0, 1), (1, 2), (2, 0)] {
            acc = &acc * &self.binomial(a, b, -1);
        }
        acc
    }

    /// `w_a^d + c w_b^d`.
    pub(crate) fn binomial(&self, a: usize, b: usize, c: i64) -> HomPoly {
        let d = self.d();
        let mut ea = [0; 3];
        ea[a] = d;
        let mut eb = [0; 3];
        eb[b] = d;
        &HomPoly::monomial(ea, self.tower.one()) + &HomPoly::monomial(eb, self.tower.from_i64(c))
    }

    fn require_standard(&self) -> Result<()> {
        if self.tower.is_standard() {
            Ok(())
        } else {
            Err(Error::NeedsStandardTower)
        }
    }

    /// The sextactic point with the given label.
    pub fn sextactic_point(&self, cluster: Cluster, j: u32, k: u32) -> Result<SextacticPoint> {
        self.require_standard()?;
        let d = self.d();
        if j >= d || k.is_multiple_of(2) || k >= 2 * d {
            return Err(Error::InvalidArgument(format!("invalid sextactic label j={j} k={k} for d={d}")));
        }
        let tw = &self.tower;
        let base = [tw.zeta_pow(j as i64), tw.one(), tw.monomial(-(k as i64), 1)];
        let perm = cluster.permutation();
        let coords = perm.map(|i| base[i].clone());
        Ok(SextacticPoint { cluster, j, k, point: ProjPoint::new(coords)? })
    }

    /// All `3d^2` sextactic points, cluster by cluster, `j` then `k` ascending.
    pub fn sextactic_points(&self) -> Result<Vec<SextacticPoint>> {
        self.require_standard()?;
        let d = self.d();
        let mut out = Vec::with_capacity(3 * (d * d) as usize);
        for cluster in Cluster::ALL {
            for j in 0..d {
                for k in (1..2 * d).step_by(2) {
                    out.push(self.sextactic_point(cluster, j, k)?);
                }
            }
        }
        Ok(out)
    }

    /// `6(2d + 5g - 5) - 3d(4 + 4d - 15)`.
    pub fn sextactic_count_formula(&self) -> i64 {
        let d = self.d() as i64;
        let g = self.genus() as i64;
        6 * (2 * d + 5 * g - 5) - 3 * d * (4 + 4 * d - 15)
    }

    fn check_off_hessian(&self, p: &ProjPoint) -> Result<()> {
        self.check_point(p)?;
        if p.coords().iter().any(FieldElement::is_zero) {
            return Err(Error::HessianVanishes(p.clone()));
        }
        Ok(())
    }

    /// Osculating conic from the general covariant formula
    /// `9H^3 D^2F - (6H^2 DH + (-3 Omega H + 4 Psi) DF) DF`,
    /// with every ingredient computed from `F` itself.
    pub fn osculating_conic_cayley(&self, p: &ProjPoint) -> Result<HomPoly> {
        self.check_point(p)?;
        let cv = self.covariants();
        let pc = p.coords();
        let h = cv.hessian.eval(pc);
        if h.is_zero() {
            return Err(Error::HessianVanishes(p.clone()));
        }
        let tw = &self.tower;
        let vars: [HomPoly; 3] = [0, 1, 2].map(|i| HomPoly::var(tw, i));
        let grad_f = self.poly.gradient().map(|g| g.eval(pc));
        let hess_f = eval_matrix(&cv.hess_f, pc);
        let grad_h = cv.grad_h.clone().map(|g| g.eval(pc));
        let omega = self.omega().eval(pc);
        let psi = self.psi().eval(pc);

        let df = HomPoly::linear(grad_f);
        let dh = HomPoly::linear(grad_h);
        let mut d2f = HomPoly::zero(tw, 2);
        for i in 0..3 {
            for j in 0..3 {
                if !hess_f[i][j].is_zero() {
                    d2f = &d2f + &(&vars[i] * &vars[j]).scale(&hess_f[i][j]);
                }
            }
        }
        let h2 = &h * &h;
        let h3 = &h2 * &h;
        let lambda9h3 = &(&omega * &h).scale_i64(-3) + &psi.scale_i64(4);
        let inner = &dh.scale(&h2.scale_i64(6)) + &df.scale(&lambda9h3);
        Ok(&d2f.scale(&h3.scale_i64(9)) - &(&inner * &df))
    }

    /// The six-term closed form of the osculating conic at `p`.
    pub fn osculating_conic_closed(&self, p: &ProjPoint) -> Result<HomPoly> {
        self.check_off_hessian(p)?;
        let d = self.d() as i64;
        let du = d as u64;
        let tw = &self.tower;
        let pc = p.coords();
        let pd = pc.clone().map(|c| c.pow(du));
        let pdm1 = pc.clone().map(|c| c.pow(du - 1));
        let p2dm1 = [0, 1, 2].map(|i| &pd[i] * &pdm1[i]);
        let p2dm2 = [0, 1, 2].map(|i| &pdm1[i] * &pdm1[i]);
        let mut terms = Vec::with_capacity(6);
        for i in 0..3 {
            let (a, b) = ((i + 1) % 3, (i + 2) % 3);
            // (2d-1) p_a^d p_b^d + (2-d)(p_a^d + p_b^d) p_i^d
            let inner = &(&pd[a] * &pd[b]).scale_i64(2 * d - 1) + &(&(&pd[a] + &pd[b]) * &pd[i]).scale_i64(2 - d);
            let mut e = [0; 3];
            e[i] = 2;
            terms.push((e, (&p2dm2[i] * &inner).scale_i64(d + 1)));
        }
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            let c = 3 - a - b;
            let first = (&p2dm1[a] * &p2dm1[b]).scale_i64(2 * (d + 1) * (d - 2));
            let second =
                (&(&(&pdm1[a] * &p2dm1[b]) + &(&p2dm1[a] * &pdm1[b])) * &pd[c]).scale_i64(4 * (2 * d - 1) * (d - 2));
            let mut e = [0; 3];
            e[a] = 1;
            e[b] = 1;
            terms.push((e, -(&first + &second)));
        }
        HomPoly::from_terms(tw, 2, terms)
    }

    /// The hyperosculating conic at a sextactic point: the six-term form
    /// `O_{j,k}` for the `z` cluster, permuted for the other clusters.
    pub fn hyperosculating_conic(&self, s: &SextacticPoint) -> Result<HomPoly> {
        self.require_standard()?;
        let o = self.hyperosculating_conic_z(s.j, s.k);
        let tw = &self.tower;
        let (z, o1) = (tw.zero(), tw.one());
        let m = match s.cluster {
            Cluster::Z => return Ok(o),
            // O(z, x, y)
            Cluster::Y => {
                [[z.clone(), z.clone(), o1.clone()], [o1.clone(), z.clone(), z.clone()], [z.clone(), o1.clone(), z]]
            }
            // O(y, z, x)
            Cluster::X => [[z.clone(), o1.clone(), z.clone()], [z.clone(), z.clone(), o1.clone()], [o1, z.clone(), z]],
        };
        Ok(o.compose_linear(&m))
    }

    /// `O_{j,k}` for `s_{j,k} = (zeta^j : 1 : u^-k t)`.
    pub fn hyperosculating_conic_z(&self, j: u32, k: u32) -> HomPoly {
        let d = self.d() as i64;
        let tw = &self.tower;
        let (j, k) = (j as i64, k as i64);
        let zeta_mj = tw.zeta_pow(-j);
        let uk_t = tw.monomial(k, -1);
        let terms = [
            ([2, 0, 0], tw.zeta_pow(-2 * j).scale_i64(d * (d + 1))),
            ([0, 2, 0], tw.from_i64(d * (d + 1))),
            ([0, 0, 2], tw.monomial(2 * k, -2).scale_i64(-4 * (d + 1) * (2 * d - 3))),
            ([1, 1, 0], zeta_mj.scale_i64(-2 * (d - 2) * (5 * d - 3))),
            ([1, 0, 1], (&zeta_mj * &uk_t).scale_i64(8 * d * (d - 2))),
            ([0, 1, 1], uk_t.scale_i64(8 * d * (d - 2))),
        ];
        HomPoly::from_terms(tw, 2, terms).expect("homogeneous")
    }
}

/// A Fermat curve over an auxiliary field `Q(u, c^(1/d))` with
/// `c = m^d - 1`, which carries the non-special point `(1 : t : m u)`.
///
/// The standard field has no points of the curve besides its special
/// points (and their relatives), so generic-point checks run here.
pub fn auxiliary_curve(d: u32) -> Result<(FermatCurve, ProjPoint)> {
    for m in 2u64..16 {
        let Some(c) = m.checked_pow(d).map(|v| v - 1) else {
            break;
        };
        if let Ok(tower) = Tower::with_radicand(d, c) {
            let curve = FermatCurve::over(&tower);
            let p = ProjPoint::new([tower.one(), tower.t(), tower.u().scale_i64(m as i64)])?;
            debug_assert!(curve.contains(&p));
            return Ok((curve, p));
        }
    }
    Err(Error::UnsupportedDegree(d))
}

/// All images of `p` under coordinate permutations and scalings by
/// `d`-th roots of unity (the `6d^2` monomial automorphisms).
pub fn monomial_orbit(p: &ProjPoint) -> Vec<ProjPoint> {
    let tower = p.tower();
    let d = tower.d() as i64;
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for perm in perms {
        for a in 0..d {
            for b in 0..d {
                let c = p.coords();
                let coords = [&c[perm[0]] * &tower.zeta_pow(a), &c[perm[1]] * &tower.zeta_pow(b), c[perm[2]].clone()];
                let q = ProjPoint::new(coords).expect("nonzero");
                if seen.insert(q.clone()) {
                    out.push(q);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intersect::int_mult;

    #[test]
    fn hessian_identity_small() {
        for d in 3..=5 {
            let c = FermatCurve::new(d).unwrap();
            assert_eq!(c.hessian(), &c.hessian_closed_form());
        }
    }

    #[test]
    fn omega_psi_closed_forms() {
        for d in 3..=5 {
            let c = FermatCurve::new(d).unwrap();
            assert_eq!(c.omega(), &c.omega_closed_form(), "omega d={d}");
            assert_eq!(c.psi(), &c.psi_closed_form(), "psi d={d}");
        }
    }

    #[test]
    fn two_hessian_factors() {
        let c = FermatCurve::new(3).unwrap();
        let h2 = c.two_hessian();
        // reversed-column Vandermonde: the determinant is minus the product
        assert_eq!(h2, c.two_hessian_factored().neg());
        // no (xyz) factor at d = 3
        assert!(h2.terms().any(|(e, _)| e.contains(&0)));
    }

    #[test]
    fn sextactic_points_count_and_incidence() {
        let c = FermatCurve::new(3).unwrap();
        let pts = c.sextactic_points().unwrap();
        assert_eq!(pts.len(), 27);
        assert_eq!(c.sextactic_count_formula(), 27);
        assert_eq!(FermatCurve::new(5).unwrap().sextactic_count_formula(), 75);
        let h2 = c.two_hessian();
        for s in &pts {
            assert!(c.contains(&s.point));
            assert!(h2.vanishes_at(&s.point));
        }
    }

    #[test]
    fn tangent_examples() {
        let c = FermatCurve::new(5).unwrap();
        let tw = c.tower().clone();
        let p = ProjPoint::new([tw.zero(), tw.one(), tw.u_pow(3)]).unwrap();
        let t = c.tangent_line(&p).unwrap();
        let expected = HomPoly::linear([tw.zero(), tw.one(), -tw.u_pow(-3)]);
        assert!(t.proportional(&expected));
        let off = ProjPoint::from_i64(&tw, [1, 1, 1]).unwrap();
        assert!(matches!(c.tangent_line(&off), Err(Error::NotOnCurve(_))));
    }

    #[test]
    fn hyperosculating_conic_has_contact_six() {
        let c = FermatCurve::new(4).unwrap();
        for cl in Cluster::ALL {
            let s = c.sextactic_point(cl, 1, 3).unwrap();
            let o = c.hyperosculating_conic(&s).unwrap();
            assert!(o.vanishes_at(&s.point));
            assert_eq!(int_mult(c.poly(), &o, &s.point).unwrap(), 6);
            assert!(o.proportional(&c.osculating_conic_closed(&s.point).unwrap()));
        }
    }

    #[test]
    fn closed_form_conic_rejects_inflection_points() {
        let c = FermatCurve::new(4).unwrap();
        let p = c.inflection_points()[0].clone();
        assert!(matches!(c.osculating_conic_closed(&p), Err(Error::HessianVanishes(_))));
        assert!(matches!(c.osculating_conic_cayley(&p), Err(Error::HessianVanishes(_))));
    }

    #[test]
    fn auxiliary_points_are_generic() {
        let (c, p) = auxiliary_curve(3).unwrap();
        assert!(c.contains(&p));
        let o = c.osculating_conic_closed(&p).unwrap();
        assert_eq!(int_mult(c.poly(), &o, &p).unwrap(), 5);
        assert!(o.proportional(&c.osculating_conic_cayley(&p).unwrap()));
        assert!(matches!(c.sextactic_points(), Err(Error::NeedsStandardTower)));
        assert_eq!(monomial_orbit(&p).len(), 54);
    }
}
