//! Local intersection multiplicities.
//!
//! [`int_mult`] substitutes a truncated power-series parametrization of the
//! branch of `f` at a smooth point into `g` and reads off the valuation.
//! [`resultant_order`] computes the same number by an unrelated route: after a
//! random change of coordinates, the order of vanishing of a resultant.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{HomPoly, ProjPoint};
use crate::tower::{FieldElement, Tower, TowerField};
use crate::univariate;

type Series = Vec<FieldElement>;

fn series_mul(a: &[FieldElement], b: &[FieldElement], n: usize) -> Series {
    let tower = a[0].tower();
    let mut out = vec![tower.zero(); n];
    for (i, ai) in a.iter().enumerate().take(n) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(n - i) {
            if bj.is_zero() {
                continue;
            }
            out[i + j] = &out[i + j] + &(ai * bj);
        }
    }
    out
}

fn series_inv(a: &[FieldElement], n: usize) -> Result<Series> {
    let inv0 = a[0].inv()?;
    let mut out = vec![inv0.clone()];
    for k in 1..n {
        let mut acc = a[0].tower().zero();
        for i in 1..=k.min(a.len() - 1) {
            if !a[i].is_zero() {
                acc = &acc + &(&a[i] * &out[k - i]);
            }
        }
        out.push(-(&acc * &inv0));
    }
    Ok(out)
}

/// Index of the first nonzero coefficient, if any below the truncation order.
pub fn valuation(s: &[FieldElement]) -> Option<usize> {
    s.iter().position(|c| !c.is_zero())
}

/// `g` evaluated on three coordinate series, modulo `s^n`.
fn compose(g: &HomPoly, coords: &[Series; 3], n: usize) -> Series {
    let tower = g.tower();
    let mut pows: Vec<Vec<Series>> = Vec::with_capacity(3);
    for (i, c) in coords.iter().enumerate() {
        let max = g.terms().map(|(e, _)| e[i]).max().unwrap_or(0) as usize;
        let mut one = vec![tower.zero(); n];
        one[0] = tower.one();
        let mut v = vec![one];
        for k in 1..=max {
            let next = series_mul(&v[k - 1], c, n);
            v.push(next);
        }
        pows.push(v);
    }
    let mut out = vec![tower.zero(); n];
    for (e, c) in g.terms() {
        let mut term = pows[0][e[0] as usize].clone();
        if e[1] > 0 {
            term = series_mul(&term, &pows[1][e[1] as usize], n);
        }
        if e[2] > 0 {
            term = series_mul(&term, &pows[2][e[2] as usize], n);
        }
        for (o, t) in out.iter_mut().zip(&term) {
            if !t.is_zero() {
                *o = &*o + &(t * c);
            }
        }
    }
    out
}

/// A truncated parametrization `s -> (X(s) : Y(s) : Z(s))` of the branch of a
/// curve through a smooth point. The chart coordinate is identically 1, the
/// free coordinate is `p + s`, the solved coordinate is a power series.
#[derive(Clone, Debug)]
pub struct BranchSeries {
    base: ProjPoint,
    chart: usize,
    free: usize,
    solved: usize,
    order: usize,
    coords: [Series; 3],
}

impl BranchSeries {
    pub fn base(&self) -> &ProjPoint {
        &self.base
    }

    pub fn chart(&self) -> usize {
        self.chart
    }

    /// The coordinate used as the series parameter (shifted by its value at the base).
    pub fn free_variable(&self) -> usize {
        self.free
    }

    pub fn solved_variable(&self) -> usize {
        self.solved
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coordinate(&self, i: usize) -> &[FieldElement] {
        &self.coords[i]
    }

    /// Coefficients of `s` in the three coordinates: a tangent vector at the base.
    pub fn tangent_vector(&self) -> [FieldElement; 3] {
        [0, 1, 2].map(|i| self.coords[i][1].clone())
    }

    /// `g` restricted to the branch, modulo `s^order`.
    pub fn substitute(&self, g: &HomPoly) -> Vec<FieldElement> {
        compose(g, &self.coords, self.order)
    }
}

/// Branch of `f` at the smooth point `p`, correct modulo `s^order`.
pub fn branch_series(f: &HomPoly, p: &ProjPoint, order: usize) -> Result<BranchSeries> {
    if !f.vanishes_at(p) {
        return Err(Error::NotOnCurve(p.clone()));
    }
    let grad: Vec<FieldElement> = f.gradient().iter().map(|g| g.evaluate(p)).collect();
    if grad.iter().all(FieldElement::is_zero) {
        return Err(Error::SingularPoint(p.clone()));
    }
    let tower = f.tower().clone();
    let chart = p.chart();
    let others: Vec<usize> = (0..3).filter(|&i| i != chart).collect();
    // Euler's relation makes at least one non-chart partial nonzero at p
    let mut solved = None;
    let mut best = -1.0f64;
    for &i in &others {
        if grad[i].is_zero() {
            continue;
        }
        let m = grad[i].embed(128).modulus();
        if m > best {
            best = m;
            solved = Some(i);
        }
    }
    let solved = solved.expect("smooth point has a nonzero affine partial");
    let free = others.into_iter().find(|&i| i != solved).unwrap();
    let order = order.max(2);

    let constant = |c: &FieldElement| -> Series {
        let mut v = vec![tower.zero(); order];
        v[0] = c.clone();
        v
    };
    let mut coords: [Series; 3] = [0, 1, 2].map(|i| constant(&p.coords()[i]));
    coords[free][1] = tower.one();

    let df = f.partial(solved);
    // Newton iteration: each pass doubles the number of correct coefficients
    let mut prec = 1;
    while prec < order {
        prec = (2 * prec).min(order);
        let truncated: [Series; 3] = [0, 1, 2].map(|i| coords[i][..prec].to_vec());
        let val = compose(f, &truncated, prec);
        let der = compose(&df, &truncated, prec);
        let corr = series_mul(&val, &series_inv(&der, prec)?, prec);
        for (k, c) in corr.iter().enumerate() {
            if !c.is_zero() {
                coords[solved][k] = &coords[solved][k] - c;
            }
        }
    }
    let branch = BranchSeries { base: p.clone(), chart, free, solved, order, coords };
    debug_assert!(valuation(&branch.substitute(f)).is_none());
    Ok(branch)
}

fn contact_bound(f: &HomPoly, g: &HomPoly) -> usize {
    let (df, dg) = (f.deg() as usize, g.deg() as usize);
    match dg {
        1 => df + 1,
        2 => 7,
        _ => df * dg + 1,
    }
}

/// Intersection multiplicity of `g` with the branch of `f` at the smooth point `p`.
pub fn int_mult(f: &HomPoly, g: &HomPoly, p: &ProjPoint) -> Result<u32> {
    if !f.vanishes_at(p) {
        return Err(Error::NotOnCurve(p.clone()));
    }
    if !g.vanishes_at(p) {
        return Ok(0);
    }
    let cap = 4 * f.deg() as usize * g.deg() as usize + 8;
    let mut n = (contact_bound(f, g) + 2).min(cap);
    loop {
        let branch = branch_series(f, p, n)?;
        if let Some(v) = valuation(&branch.substitute(g)) {
            return Ok(v as u32);
        }
        if n >= cap {
            return Err(Error::TruncationExhausted { cap });
        }
        n = (2 * n).min(cap);
    }
}

/// Outcome of [`resultant_order`], with the data needed to reproduce it.
#[derive(Clone, Debug, Serialize)]
pub struct ResultantOrder {
    pub order: u32,
    pub seed: u64,
    pub attempts: u32,
    pub matrix: [[i64; 3]; 3],
}

const RESULTANT_ATTEMPTS: u32 = 16;

/// Intersection multiplicity at `p` via the order of vanishing of
/// `Res_y(f', g')` after a seeded random integer change of coordinates.
pub fn resultant_order(f: &HomPoly, g: &HomPoly, p: &ProjPoint, seed: u64) -> Result<ResultantOrder> {
    if !f.vanishes_at(p) || !g.vanishes_at(p) {
        return Ok(ResultantOrder { order: 0, seed, attempts: 0, matrix: [[1, 0, 0], [0, 1, 0], [0, 0, 1]] });
    }
    let tower = f.tower().clone();
    let mut last_seed = seed;
    for attempt in 0..RESULTANT_ATTEMPTS {
        last_seed = seed.wrapping_add(attempt as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(last_seed);
        let a = random_unimodular_ish(&mut rng);
        match resultant_order_in(&tower, f, g, p, &a)? {
            Some(order) => return Ok(ResultantOrder { order, seed: last_seed, attempts: attempt + 1, matrix: a }),
            None => continue,
        }
    }
    Err(Error::GenericityFailure { attempts: RESULTANT_ATTEMPTS, seed: last_seed })
}

fn det3_i64(a: &[[i64; 3]; 3]) -> i64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

fn random_unimodular_ish<R: Rng>(rng: &mut R) -> [[i64; 3]; 3] {
    loop {
        let a: [[i64; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-4..=4)));
        if det3_i64(&a) != 0 {
            return a;
        }
    }
}

fn adjugate(a: &[[i64; 3]; 3]) -> [[i64; 3]; 3] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            // cofactor of (j, i)
            let rows: Vec<usize> = (0..3).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..3).filter(|&c| c != i).collect();
            let m = a[rows[0]][cols[0]] * a[rows[1]][cols[1]] - a[rows[0]][cols[1]] * a[rows[1]][cols[0]];
            if (i + j) % 2 == 0 {
                m
            } else {
                -m
            }
        })
    })
}

/// Coefficients in `y` of `f(xi, y, 1)`.
fn specialize(f: &HomPoly, xi: &FieldElement) -> Vec<FieldElement> {
    let tower = f.tower();
    let mut out = vec![tower.zero(); f.deg() as usize + 1];
    for (e, c) in f.terms() {
        let v = c * &xi.pow(e[0] as u64);
        out[e[1] as usize] = &out[e[1] as usize] + &v;
    }
    out
}

fn sylvester_det(tower: &Arc<Tower>, a: &[FieldElement], b: &[FieldElement]) -> Result<FieldElement> {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let mut mat = vec![vec![tower.zero(); size]; size];
    for r in 0..n {
        for (k, c) in a.iter().rev().enumerate() {
            mat[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in b.iter().rev().enumerate() {
            mat[n + r][r + k] = c.clone();
        }
    }
    let mut det = tower.one();
    for col in 0..size {
        let Some(piv) = (col..size).find(|&r| !mat[r][col].is_zero()) else {
            return Ok(tower.zero());
        };
        if piv != col {
            mat.swap(piv, col);
            det = -det;
        }
        det = &det * &mat[col][col];
        let inv = mat[col][col].inv()?;
        for r in col + 1..size {
            if mat[r][col].is_zero() {
                continue;
            }
            let factor = &mat[r][col] * &inv;
            for c in col..size {
                if !mat[col][c].is_zero() {
                    let v = &factor * &mat[col][c];
                    mat[r][c] = &mat[r][c] - &v;
                }
            }
        }
    }
    Ok(det)
}

fn resultant_order_in(
    tower: &Arc<Tower>,
    f: &HomPoly,
    g: &HomPoly,
    p: &ProjPoint,
    a: &[[i64; 3]; 3],
) -> Result<Option<u32>> {
    let am = a.map(|row| row.map(|v| tower.from_i64(v)));
    let adj = adjugate(a).map(|row| row.map(|v| tower.from_i64(v)));
    let f2 = f.compose_linear(&am);
    let g2 = g.compose_linear(&am);
    let q = p.transform(&adj)?;
    let z = &q.coords()[2];
    if z.is_zero() || f2.coeff([0, f2.deg(), 0]).is_zero() || g2.coeff([0, g2.deg(), 0]).is_zero() {
        return Ok(None);
    }
    let zi = z.inv()?;
    let (x0, y0) = (&q.coords()[0] * &zi, &q.coords()[1] * &zi);

    let big_d = (f.deg() * g.deg()) as usize;
    let values: Vec<FieldElement> = (0..=big_d)
        .map(|i| {
            let xi = &x0 + &tower.from_i64(i as i64);
            sylvester_det(tower, &specialize(&f2, &xi), &specialize(&g2, &xi))
        })
        .collect::<Result<_>>()?;
    if values.iter().all(FieldElement::is_zero) {
        return Err(Error::ResultantZero);
    }
    // the fiber x = x0 must meet both curves only at p
    let field = TowerField(tower);
    let common = univariate::gcd(&field, &specialize(&f2, &x0), &specialize(&g2, &x0))?;
    let lin = vec![-&y0, tower.one()];
    let mut rest = common;
    while rest.len() > 1 {
        let (quo, rem) = univariate::divrem(&field, &rest, &lin)?;
        if !rem.is_empty() {
            return Ok(None);
        }
        rest = quo;
    }

    // Newton forward differences, then the monomial coefficients of R(x0 + s)
    let mut diffs = Vec::with_capacity(values.len());
    let mut row = values;
    while !row.is_empty() {
        diffs.push(row[0].clone());
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    let mut falling: Vec<Vec<BigRational>> = vec![vec![BigRational::one()]];
    let mut fact = BigRational::one();
    let mut weights = vec![BigRational::one()];
    for k in 1..diffs.len() {
        let prev = &falling[k - 1];
        let mut next = vec![BigRational::zero(); prev.len() + 1];
        let kk = BigRational::from_integer(BigInt::from(k as i64 - 1));
        for (i, c) in prev.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * &kk;
        }
        falling.push(next);
        fact *= BigRational::from_integer(BigInt::from(k as i64));
        weights.push(fact.recip());
    }
    for m in 0..diffs.len() {
        let mut c = tower.zero();
        for k in m..diffs.len() {
            let w = &weights[k] * &falling[k][m];
            if !w.is_zero() && !diffs[k].is_zero() {
                c = &c + &diffs[k].scale(&w);
            }
        }
        if !c.is_zero() {
            return Ok(Some(m as u32));
        }
    }
    unreachable!("nonzero values give a nonzero interpolant")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fermat(k: &Arc<Tower>) -> HomPoly {
        let d = k.d();
        HomPoly::from_terms(k, d, [[d, 0, 0], [0, d, 0], [0, 0, d]].map(|e| (e, k.one()))).unwrap()
    }

    #[test]
    fn residual_vanishes() {
        let k = Tower::new(3).unwrap();
        let f = fermat(&k);
        let p = ProjPoint::new([k.zero(), k.one(), k.u()]).unwrap();
        let b = branch_series(&f, &p, 8).unwrap();
        assert!(valuation(&b.substitute(&f)).is_none());
        // the tangent vector lies on the tangent line y - u^-1 z
        let t = HomPoly::linear([k.zero(), k.one(), -k.u_pow(-1)]);
        let v = b.tangent_vector();
        assert!(t.eval(&v).is_zero());
    }

    #[test]
    fn errors_for_bad_points() {
        let k = Tower::new(3).unwrap();
        let f = fermat(&k);
        let off = ProjPoint::from_i64(&k, [1, 1, 1]).unwrap();
        assert!(matches!(branch_series(&f, &off, 4), Err(Error::NotOnCurve(_))));
        let node = HomPoly::monomial([1, 1, 0], k.one());
        let origin = ProjPoint::from_i64(&k, [0, 0, 1]).unwrap();
        assert!(matches!(branch_series(&node, &origin, 4), Err(Error::SingularPoint(_))));
    }

    #[test]
    fn inflection_tangent_has_full_contact() {
        let k = Tower::new(3).unwrap();
        let f = fermat(&k);
        let p = ProjPoint::new([k.zero(), k.one(), k.u()]).unwrap();
        let t = HomPoly::linear([k.zero(), k.one(), -k.u_pow(-1)]);
        assert_eq!(int_mult(&f, &t, &p).unwrap(), 3);
        assert_eq!(resultant_order(&f, &t, &p, 1).unwrap().order, 3);
    }

    #[test]
    fn transverse_lines() {
        let k = Tower::new(4).unwrap();
        let l1 = HomPoly::linear([k.one(), k.u(), k.zero()]);
        let l2 = HomPoly::linear([k.zero(), k.one(), k.t()]);
        let p = crate::poly::meet(&l1, &l2).unwrap();
        assert_eq!(int_mult(&l1, &l2, &p).unwrap(), 1);
        assert_eq!(resultant_order(&l1, &l2, &p, 3).unwrap().order, 1);
    }

    #[test]
    fn common_component_exhausts_truncation() {
        let k = Tower::new(3).unwrap();
        let f = fermat(&k);
        let g = &f * &HomPoly::var(&k, 0);
        let p = ProjPoint::new([k.zero(), k.one(), k.u()]).unwrap();
        assert!(matches!(int_mult(&f, &g, &p), Err(Error::TruncationExhausted { .. })));
        assert!(matches!(resultant_order(&f, &g, &p, 0), Err(Error::ResultantZero)));
    }

    #[test]
    fn point_off_second_curve_has_multiplicity_zero() {
        let k = Tower::new(5).unwrap();
        let f = fermat(&k);
        let p = ProjPoint::new([k.zero(), k.one(), k.u()]).unwrap();
        let g = HomPoly::var(&k, 1);
        assert_eq!(int_mult(&f, &g, &p).unwrap(), 0);
    }
}
