//! Degree theory of structured finite-valued maps on the circle and on S⁰.
//!
//! A structured n-valued map of the circle is a finite cover of S¹ (a disjoint
//! union of circles, each winding `r_i` times over the base) together with a
//! map of the total space back into S¹, represented here by exact sampled
//! loops. The degree is the total winding; it is multiplicative under
//! composition, which is realized by the pullback cover with adaptive
//! refinement of the inner samples.

use num::bigint::BigInt;
use num::integer::gcd;
use num::rational::BigRational;
use num::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::turn::{shortest_lift, winding, SampledLoop, Turn, TurnClass, TurnError};

/// Hard cap on refined samples per composed component.
pub const REFINEMENT_BUDGET: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegreeError {
    #[error(transparent)]
    Turn(#[from] TurnError),
    #[error("refinement budget of {budget} samples exceeded for a composed component")]
    RefinementLimit { budget: usize },
    #[error("covering degree must be at least 1")]
    ZeroCoveringDegree,
    #[error("loop length {len} is not divisible by covering degree {r}")]
    LengthNotDivisible { len: usize, r: usize },
    #[error("S0 signs must be +1 or -1")]
    InvalidSign,
    #[error("expected {n} points over each base point of S0, found {found}")]
    UnbalancedS0 { n: usize, found: usize },
}

/// A finite cover of the circle together with a sampled circle map on the
/// total space. Component `i` winds `r_i` times over the base and carries a
/// loop sampled uniformly along the full `r_i`-fold traversal, so the sample
/// count is a multiple of `r_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuredCircleMap {
    components: Vec<(usize, SampledLoop)>,
}

impl StructuredCircleMap {
    pub fn new(components: Vec<(usize, SampledLoop)>) -> Result<StructuredCircleMap, DegreeError> {
        for (r, lp) in &components {
            if *r == 0 {
                return Err(DegreeError::ZeroCoveringDegree);
            }
            if lp.len() % r != 0 {
                return Err(DegreeError::LengthNotDivisible { len: lp.len(), r: *r });
            }
        }
        Ok(StructuredCircleMap { components })
    }

    pub fn components(&self) -> &[(usize, SampledLoop)] {
        &self.components
    }

    /// The value count n = Σ r_i of the underlying multivalued map.
    pub fn n(&self) -> usize {
        self.components.iter().map(|(r, _)| r).sum()
    }
}

/// The degree of a structured circle map: the sum over components of the
/// winding of the component loop.
pub fn degree_circle(m: &StructuredCircleMap) -> Result<BigInt, TurnError> {
    let mut total = BigInt::zero();
    for (_, lp) in &m.components {
        total += winding(lp)?;
    }
    Ok(total)
}

/// A structured n-valued self-map of S⁰ = {+1, −1}: a list of points of the
/// covering space, each recorded as (base point, image point), with exactly n
/// points over each base point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuredS0Map {
    points: Vec<(i8, i8)>,
}

impl StructuredS0Map {
    pub fn new(points: Vec<(i8, i8)>) -> Result<StructuredS0Map, DegreeError> {
        if points.iter().any(|(b, v)| b.abs() != 1 || v.abs() != 1) {
            return Err(DegreeError::InvalidSign);
        }
        let over_plus = points.iter().filter(|(b, _)| *b == 1).count();
        let over_minus = points.len() - over_plus;
        if over_plus != over_minus {
            return Err(DegreeError::UnbalancedS0 { n: over_plus, found: over_minus });
        }
        Ok(StructuredS0Map { points })
    }

    pub fn points(&self) -> &[(i8, i8)] {
        &self.points
    }

    pub fn n(&self) -> usize {
        self.points.len() / 2
    }

    /// Number of points x of the cover with p(x) = f(x).
    pub fn coincidences(&self) -> usize {
        self.points.iter().filter(|(b, v)| b == v).count()
    }
}

/// The ad hoc S⁰ degree: coincidence count minus n. Always in [−n, n].
pub fn degree_s0(m: &StructuredS0Map) -> i64 {
    m.coincidences() as i64 - m.n() as i64
}

/// The Lefschetz number of an n-valued map of degree `deg` on the sphere of a
/// vector space of dimension `dim_v` ∈ {1, 2}, obtained by solving
/// deg = (−1)^{dim V} (n − L).
pub fn lefschetz(deg: i64, n: u64, dim_v: u8) -> i64 {
    assert!(dim_v == 1 || dim_v == 2, "only spheres of 1- and 2-dimensional fibres");
    if dim_v == 2 {
        n as i64 - deg
    } else {
        n as i64 + deg
    }
}

fn rat(t: &Turn) -> BigRational {
    t.rational().clone()
}

fn turn_of(r: BigRational) -> Turn {
    Turn::new(r.numer().clone(), r.denom().clone())
}

/// Continuous lift of a sampled loop: `lifts[t]` is the lifted value at sample
/// `t`, with `lifts[len] = lifts[0] + winding`.
fn continuous_lift(lp: &SampledLoop) -> Result<(Vec<BigRational>, BigInt), TurnError> {
    let samples = lp.samples();
    let mut lifts = Vec::with_capacity(samples.len() + 1);
    lifts.push(rat(samples[0].representative()));
    for i in 0..samples.len() {
        let step = shortest_lift(&samples[i], &samples[(i + 1) % samples.len()])?;
        let next = lifts.last().unwrap() + rat(&step);
        lifts.push(next);
    }
    let wind = (lifts.last().unwrap() - &lifts[0]).to_integer();
    Ok((lifts, wind))
}

/// Evaluate the piecewise-linear extension of a lifted loop at an arbitrary
/// lifted parameter. `g` has `m + 1` knots at parameters t/m, and the lift
/// shifts by the winding `e` per unit of parameter.
fn eval_lift(g: &[BigRational], e: &BigInt, m: usize, tau: &BigRational) -> BigRational {
    let whole = tau.floor().to_integer();
    let frac = tau - BigRational::from_integer(whole.clone());
    let pos = &frac * BigRational::from_integer(BigInt::from(m));
    let t = pos.floor().to_integer().to_usize().expect("knot index fits in usize");
    let q = &pos - BigRational::from_integer(BigInt::from(t));
    &g[t] + (&g[t + 1] - &g[t]) * q + BigRational::from_integer(e * whole)
}

/// Composition of structured circle maps: `outer ∘ inner` is defined on the
/// pullback of the outer cover along the inner map. Components are enumerated
/// via the cycle structure of the induced sheet permutation (a shift by the
/// inner component's winding on the outer component's sheets), and the inner
/// samples are refined by linear lift interpolation until every composed step
/// stays strictly under the half-turn bound.
pub fn compose(
    outer: &StructuredCircleMap,
    inner: &StructuredCircleMap,
) -> Result<StructuredCircleMap, DegreeError> {
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let mut components = Vec::new();
    for (r_i, inner_loop) in inner.components() {
        let (inner_lift, d_i) = continuous_lift(inner_loop)?;
        let d_i64 = d_i.to_i64().expect("inner winding fits in i64");
        let l_in = inner_loop.len();
        for (s_j, outer_loop) in outer.components() {
            let (outer_lift, e_j) = continuous_lift(outer_loop)?;
            let m_out = outer_loop.len();
            let g = gcd(d_i64.unsigned_abs() as usize, *s_j);
            let g = if g == 0 { *s_j } else { g };
            // Each cycle of the shift k ↦ k + d_i (mod s_j) has length c and
            // yields one composed component covering the base r_i·c times.
            let c = s_j / g;
            for k in 0..g {
                let lp = refine_component(
                    &inner_lift,
                    l_in,
                    &d_i,
                    &outer_lift,
                    &e_j,
                    m_out,
                    *s_j,
                    k,
                    c,
                    &half,
                )?;
                components.push((r_i * c, lp));
            }
        }
    }
    StructuredCircleMap::new(components)
}

/// Build one composed component's sampled loop, doubling the refinement factor
/// until every composed step is strictly shorter than half a turn.
#[allow(clippy::too_many_arguments)]
fn refine_component(
    inner_lift: &[BigRational],
    l_in: usize,
    d_i: &BigInt,
    outer_lift: &[BigRational],
    e_j: &BigInt,
    m_out: usize,
    s_j: usize,
    sheet: usize,
    c: usize,
    half: &BigRational,
) -> Result<SampledLoop, DegreeError> {
    let mut refine = 1usize;
    loop {
        let total = l_in * c * refine;
        if total > REFINEMENT_BUDGET {
            return Err(DegreeError::RefinementLimit { budget: REFINEMENT_BUDGET });
        }
        let s_rat = BigRational::from_integer(BigInt::from(s_j));
        let k_rat = BigRational::from_integer(BigInt::from(sheet));
        let d_rat = BigRational::from_integer(d_i.clone());
        let mut values = Vec::with_capacity(total + 1);
        // Include the closing sample (index `total`) so the wrap-around step
        // can be bounded exactly like the interior ones.
        for idx in 0..=total {
            let (lap, rem) = (idx / (l_in * refine), idx % (l_in * refine));
            let (t, q) = (rem / refine, rem % refine);
            let interp = &inner_lift[t]
                + (&inner_lift[t + 1] - &inner_lift[t])
                    * BigRational::new(BigInt::from(q), BigInt::from(refine));
            let ell = interp + &d_rat * BigRational::from_integer(BigInt::from(lap));
            let tau = (ell + &k_rat) / &s_rat;
            values.push(eval_lift(outer_lift, e_j, m_out, &tau));
        }
        let ok = values.windows(2).all(|w| (&w[1] - &w[0]).abs() < *half);
        if ok {
            let samples: Vec<TurnClass> =
                values[..total].iter().map(|v| turn_of(v.clone()).class()).collect();
            return Ok(SampledLoop::new(samples)?);
        }
        refine *= 2;
    }
}

/// The lens quotient family: the n-valued map of S¹ whose graph is
/// {(z, w) : z^d = w^n}. For d ≠ 0 it has gcd(|d|, n) components, each of
/// covering degree n/gcd, and total degree d; for d = 0 it is n constant
/// loops. `samples_per_sector` samples are taken per base sector; any value
/// exceeding 2·max(|d|, n) keeps every step under the half-turn bound.
pub fn lens_map(n: usize, d: i64, samples_per_sector: usize) -> StructuredCircleMap {
    assert!(n >= 1, "n must be positive");
    assert!(
        samples_per_sector as i64 > 2 * d.abs().max(n as i64),
        "samples_per_sector must exceed 2*max(|d|, n)"
    );
    let k = samples_per_sector;
    let comp_count = if d == 0 { n } else { gcd(d.unsigned_abs() as usize, n) };
    let r = n / comp_count;
    let mut components = Vec::with_capacity(comp_count);
    for comp in 0..comp_count {
        let len = k * r;
        let samples: Vec<TurnClass> = (0..len)
            .map(|s| {
                // w-angle of the point over base parameter s/len on this
                // component: (d·s/k + comp) / n turns.
                let num = BigRational::new(BigInt::from(d) * BigInt::from(s), BigInt::from(k))
                    + BigRational::from_integer(BigInt::from(comp));
                turn_of(num / BigRational::from_integer(BigInt::from(n))).class()
            })
            .collect();
        components.push((r, SampledLoop::new(samples).expect("steps bounded by construction")));
    }
    StructuredCircleMap::new(components).expect("lengths divisible by construction")
}

/// A sensible sample density for [`lens_map`] given only (n, d).
pub fn default_lens_samples(n: usize, d: i64) -> usize {
    (2 * (d.unsigned_abs() as usize).max(n) + 2).max(4)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tc(p: i64, q: i64) -> TurnClass {
        TurnClass::from((p, q))
    }

    fn identity_map() -> StructuredCircleMap {
        let lp = SampledLoop::new(vec![tc(0, 1), tc(1, 4), tc(1, 2), tc(3, 4)]).unwrap();
        StructuredCircleMap::new(vec![(1, lp)]).unwrap()
    }

    fn power_map(d: i64, k: usize) -> StructuredCircleMap {
        let samples: Vec<TurnClass> =
            (0..k).map(|s| TurnClass::new(Turn::new(d * s as i64, k as i64))).collect();
        StructuredCircleMap::new(vec![(1, SampledLoop::new(samples).unwrap())]).unwrap()
    }

    #[test]
    fn degree_identity_and_constant() {
        assert_eq!(degree_circle(&identity_map()).unwrap(), BigInt::from(1));
        let constant = SampledLoop::new(vec![tc(1, 3); 6]).unwrap();
        let m = StructuredCircleMap::new(vec![(2, constant)]).unwrap();
        assert_eq!(degree_circle(&m).unwrap(), BigInt::from(0));
    }

    #[test]
    fn invalid_components_rejected() {
        let lp = SampledLoop::new(vec![tc(0, 1), tc(1, 4), tc(3, 8)]).unwrap();
        assert_eq!(
            StructuredCircleMap::new(vec![(0, lp.clone())]),
            Err(DegreeError::ZeroCoveringDegree)
        );
        assert_eq!(
            StructuredCircleMap::new(vec![(2, lp)]),
            Err(DegreeError::LengthNotDivisible { len: 3, r: 2 })
        );
    }

    #[test]
    fn lens_examples() {
        let m = lens_map(2, 3, 8);
        assert_eq!(m.components().len(), 1);
        assert_eq!(m.components()[0].0, 2);
        assert_eq!(degree_circle(&m).unwrap(), BigInt::from(3));

        let m = lens_map(4, 2, 10);
        assert_eq!(m.components().len(), 2);
        assert_eq!(m.components()[0].0, 2);
        assert_eq!(degree_circle(&m).unwrap(), BigInt::from(2));

        let m = lens_map(3, 0, 8);
        assert_eq!(m.components().len(), 3);
        assert_eq!(degree_circle(&m).unwrap(), BigInt::from(0));
    }

    #[test]
    fn lens_sweep() {
        for n in 1..=12usize {
            for d in -12i64..=12 {
                let m = lens_map(n, d, default_lens_samples(n, d));
                let expected_comps =
                    if d == 0 { n } else { gcd(d.unsigned_abs() as usize, n) };
                assert_eq!(m.components().len(), expected_comps, "n={} d={}", n, d);
                assert_eq!(m.n(), n, "n={} d={}", n, d);
                assert_eq!(degree_circle(&m).unwrap(), BigInt::from(d), "n={} d={}", n, d);
            }
        }
    }

    #[test]
    fn compose_powers() {
        let sq = power_map(2, 12);
        let cube = power_map(3, 12);
        let both = compose(&sq, &cube).unwrap();
        assert_eq!(degree_circle(&both).unwrap(), BigInt::from(6));
    }

    #[test]
    fn compose_identity_and_constant() {
        let m = lens_map(3, 2, 8);
        let with_id = compose(&identity_map(), &m).unwrap();
        assert_eq!(degree_circle(&with_id).unwrap(), BigInt::from(2));
        assert_eq!(with_id.n(), m.n());

        let constant = StructuredCircleMap::new(vec![(
            1,
            SampledLoop::new(vec![tc(1, 5); 4]).unwrap(),
        )])
        .unwrap();
        let with_const = compose(&constant, &m).unwrap();
        assert_eq!(degree_circle(&with_const).unwrap(), BigInt::from(0));
    }

    #[test]
    fn compose_lens_multiplicative() {
        for (n1, d1, n2, d2) in
            [(2, 3, 3, 2), (4, 2, 2, -3), (3, 0, 2, 5), (2, -4, 3, -3), (5, 2, 4, 6)]
        {
            let f = lens_map(n1, d1, default_lens_samples(n1, d1));
            let g = lens_map(n2, d2, default_lens_samples(n2, d2));
            let gf = compose(&g, &f).unwrap();
            assert_eq!(
                degree_circle(&gf).unwrap(),
                BigInt::from(d1 * d2),
                "({},{})∘({},{})",
                n2,
                d2,
                n1,
                d1
            );
            assert_eq!(gf.n(), n1 * n2);
        }
    }

    #[test]
    fn s0_examples() {
        let identity = StructuredS0Map::new(vec![(1, 1), (-1, -1)]).unwrap();
        assert_eq!(degree_s0(&identity), 1);
        let antipodal = StructuredS0Map::new(vec![(1, -1), (-1, 1)]).unwrap();
        assert_eq!(degree_s0(&antipodal), -1);
        let f_eq_p =
            StructuredS0Map::new(vec![(1, 1), (1, 1), (-1, -1), (-1, -1)]).unwrap();
        assert_eq!(degree_s0(&f_eq_p), 2);
        assert!(StructuredS0Map::new(vec![(1, 1), (1, -1)]).is_err());
        assert!(StructuredS0Map::new(vec![(2, 1), (-1, 1)]).is_err());
    }

    #[test]
    fn s0_range_and_lefschetz_exhaustive() {
        // Over base +1, `a` points coincide; over base −1, `b` points do.
        for n in 1..=3usize {
            for a in 0..=n {
                for b in 0..=n {
                    let mut pts = Vec::new();
                    for i in 0..n {
                        pts.push((1, if i < a { 1 } else { -1 }));
                        pts.push((-1, if i < b { -1 } else { 1 }));
                    }
                    let m = StructuredS0Map::new(pts).unwrap();
                    let deg = degree_s0(&m);
                    assert!(deg >= -(n as i64) && deg <= n as i64);
                    assert_eq!(
                        lefschetz(deg, n as u64, 1),
                        m.coincidences() as i64,
                        "n={} a={} b={}",
                        n,
                        a,
                        b
                    );
                }
            }
        }
    }

    #[test]
    fn lefschetz_examples() {
        assert_eq!(lefschetz(3, 2, 2), -1);
        assert_eq!(lefschetz(0, 5, 2), 5);
        assert_eq!(lefschetz(1, 1, 1), 2);
    }
}
