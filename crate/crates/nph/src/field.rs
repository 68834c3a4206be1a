//! n-valued nowhere-zero sections of discrete bundles.
//!
//! An [`NField`] assigns every face an unordered set of n distinct nonzero
//! values (direction, magnitude) together with, for every interior adjacency,
//! a bijection ("matching") between the two adjacent value sets. The matching
//! is the discrete residue of continuity: it records which value continues
//! into which as one crosses an edge. Rank-1 fields over circles
//! ([`CircleNField`]) carry n distinct nonzero rationals per edge instead.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Signed, Zero};
use thiserror::Error;

use crate::bundle::{BundleCocycle, LineCocycle, SingleField};
use crate::complex::HalfedgeId;
use crate::turn::{shortest_lift, Turn, TurnClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("value set at face/edge {0} has coincident values")]
    DuplicateValue(usize),
    #[error("no unique matching across adjacency {0}")]
    AmbiguousMatching(usize),
    #[error("value set at face/edge {0} does not have exactly n elements")]
    SizeMismatch(usize),
    #[error("scales are not pairwise distinct")]
    ScalesNotDistinct,
    #[error("value at face/edge {0} has a nonpositive magnitude or zero value")]
    NonpositiveMagnitude(usize),
    #[error("no explicit matching supplied for adjacency of faces {0} and {1}")]
    MissingMatching(usize, usize),
    #[error("explicit matchings across adjacency {0} are not mutually inverse bijections")]
    InconsistentMatching(usize),
    #[error("quotient construction requires a reflection-free bundle")]
    ReflectionsPresent,
}

/// How matchings are derived when not given explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchingPolicy {
    Explicit,
    NearestAngle,
    ByMagnitude,
}

/// One value of a rank-2 field: a direction and a positive magnitude.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Value {
    pub angle: TurnClass,
    pub mag: BigRational,
}

impl Value {
    pub fn new(angle: TurnClass, mag: BigRational) -> Value {
        Value { angle, mag }
    }

    pub fn unit(angle: TurnClass) -> Value {
        Value {
            angle,
            mag: BigRational::from_integer(BigInt::from(1)),
        }
    }
}

/// An explicit matching record: position i of `from_face`'s value list
/// corresponds to position `perm[i]` of `to_face`'s list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitMatching {
    pub from_face: usize,
    pub to_face: usize,
    pub perm: Vec<usize>,
}

/// An n-valued nowhere-zero section of a rank-2 bundle over a surface.
#[derive(Debug, Clone)]
pub struct NField {
    n: usize,
    bundle: BundleCocycle,
    /// Exactly n values per face.
    values: Vec<Vec<Value>>,
    /// Per halfedge h: bijection from value positions of h's face to value
    /// positions of the twin face. matchings[twin(h)] inverts matchings[h].
    matchings: Vec<Vec<usize>>,
    policy: MatchingPolicy,
}

fn is_permutation(perm: &[usize], n: usize) -> bool {
    if perm.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    true
}

fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0usize; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

/// Visit all permutations of 0..n (Heap's algorithm).
fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize])) {
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    visit(&a);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            visit(&a);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

fn check_value_sets(values: &[Vec<Value>], n: usize) -> Result<(), FieldError> {
    for (f, vs) in values.iter().enumerate() {
        if vs.len() != n {
            return Err(FieldError::SizeMismatch(f));
        }
        for v in vs {
            if !v.mag.is_positive() {
                return Err(FieldError::NonpositiveMagnitude(f));
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if vs[i] == vs[j] {
                    return Err(FieldError::DuplicateValue(f));
                }
            }
        }
    }
    Ok(())
}

impl NField {
    /// Build with matchings derived from a policy. For
    /// [`MatchingPolicy::Explicit`] use [`NField::build_explicit`].
    pub fn build(
        bundle: BundleCocycle,
        values: Vec<Vec<Value>>,
        policy: MatchingPolicy,
    ) -> Result<NField, FieldError> {
        assert!(
            policy != MatchingPolicy::Explicit,
            "explicit matchings must be supplied via build_explicit"
        );
        let n = values.first().map_or(0, |v| v.len());
        assert!(n >= 1, "an n-valued field needs n >= 1");
        assert_eq!(values.len(), bundle.base().face_count());
        check_value_sets(&values, n)?;

        let hcount = bundle.base().halfedge_count();
        let mut matchings: Vec<Vec<usize>> = vec![Vec::new(); hcount];
        for h in 0..hcount {
            let t = bundle.base().twin(h);
            if h > t {
                continue;
            }
            let edge = bundle.base().edge_id(h);
            let f = bundle.base().halfedge_face(h);
            let g = bundle.base().halfedge_face(t);
            let perm = match policy {
                MatchingPolicy::NearestAngle => {
                    nearest_angle_matching(&bundle, h, &values[f], &values[g], edge, None)?
                }
                MatchingPolicy::ByMagnitude => {
                    by_magnitude_matching(&values[f], &values[g], edge)?
                }
                MatchingPolicy::Explicit => unreachable!(),
            };
            matchings[t] = invert(&perm);
            matchings[h] = perm;
        }
        Ok(NField {
            n,
            bundle,
            values,
            matchings,
            policy,
        })
    }

    /// Build with user-supplied matchings. A record may be given for either or
    /// both directions of an adjacency; both directions must agree.
    pub fn build_explicit(
        bundle: BundleCocycle,
        values: Vec<Vec<Value>>,
        records: &[ExplicitMatching],
    ) -> Result<NField, FieldError> {
        let n = values.first().map_or(0, |v| v.len());
        assert!(n >= 1, "an n-valued field needs n >= 1");
        assert_eq!(values.len(), bundle.base().face_count());
        check_value_sets(&values, n)?;

        let hcount = bundle.base().halfedge_count();
        let mut matchings: Vec<Option<Vec<usize>>> = vec![None; hcount];
        for r in records {
            if !is_permutation(&r.perm, n) {
                return Err(FieldError::SizeMismatch(r.from_face));
            }
            for h in (r.from_face * 3)..(r.from_face * 3 + 3) {
                let t = bundle.base().twin(h);
                if bundle.base().halfedge_face(t) != r.to_face {
                    continue;
                }
                let edge = bundle.base().edge_id(h);
                if let Some(existing) = &matchings[h] {
                    if existing != &r.perm {
                        return Err(FieldError::InconsistentMatching(edge));
                    }
                }
                let inv = invert(&r.perm);
                if let Some(existing) = &matchings[t] {
                    if existing != &inv {
                        return Err(FieldError::InconsistentMatching(edge));
                    }
                }
                matchings[h] = Some(r.perm.clone());
                matchings[t] = Some(inv);
            }
        }
        let mut out = Vec::with_capacity(hcount);
        for (h, m) in matchings.into_iter().enumerate() {
            match m {
                Some(p) => out.push(p),
                None => {
                    let f = bundle.base().halfedge_face(h);
                    let g = bundle.base().halfedge_face(bundle.base().twin(h));
                    return Err(FieldError::MissingMatching(f, g));
                }
            }
        }
        Ok(NField {
            n,
            bundle,
            values,
            matchings: out,
            policy: MatchingPolicy::Explicit,
        })
    }

    /// The union of n scaled single-valued sections; sheets never interact.
    pub fn from_sections(
        bundle: BundleCocycle,
        fields: &[SingleField],
        scales: &[BigRational],
    ) -> Result<NField, FieldError> {
        let n = fields.len();
        assert!(n >= 1);
        assert_eq!(scales.len(), n);
        for i in 0..n {
            assert!(scales[i].is_positive());
            for j in (i + 1)..n {
                if scales[i] == scales[j] {
                    return Err(FieldError::ScalesNotDistinct);
                }
            }
        }
        let fcount = bundle.base().face_count();
        let mut values = Vec::with_capacity(fcount);
        for f in 0..fcount {
            let vs: Vec<Value> = (0..n)
                .map(|i| Value {
                    angle: fields[i].angles[f].clone(),
                    mag: &scales[i] * &fields[i].magnitudes[f],
                })
                .collect();
            values.push(vs);
        }
        check_value_sets(&values, n)?;
        let identity: Vec<usize> = (0..n).collect();
        let matchings = vec![identity; bundle.base().halfedge_count()];
        Ok(NField {
            n,
            bundle,
            values,
            matchings,
            policy: MatchingPolicy::ByMagnitude,
        })
    }

    /// The full μ_n-orbit of a direction defined modulo 1/n: value sets
    /// {θ + k/n} with unit magnitudes, matched by nearest angle. Every
    /// adjacency must move directions by strictly less than 1/(2n) after
    /// transport, otherwise the orbit matching is ambiguous.
    pub fn from_quotient(
        bundle: BundleCocycle,
        theta: &[TurnClass],
        n: usize,
    ) -> Result<NField, FieldError> {
        assert!(n >= 1);
        assert_eq!(theta.len(), bundle.base().face_count());
        if bundle.has_reflections() {
            return Err(FieldError::ReflectionsPresent);
        }
        let bound = BigRational::new(BigInt::from(1), BigInt::from(2 * n as i64));
        let values: Vec<Vec<Value>> = theta
            .iter()
            .map(|t| {
                (0..n)
                    .map(|k| Value::unit(t.add_turn(&Turn::new(k as i64, n as i64))))
                    .collect()
            })
            .collect();
        check_value_sets(&values, n)?;

        let hcount = bundle.base().halfedge_count();
        let mut matchings: Vec<Vec<usize>> = vec![Vec::new(); hcount];
        for h in 0..hcount {
            let t = bundle.base().twin(h);
            if h > t {
                continue;
            }
            let edge = bundle.base().edge_id(h);
            let f = bundle.base().halfedge_face(h);
            let g = bundle.base().halfedge_face(t);
            let perm = orbit_matching(&bundle, h, &theta[f], &theta[g], n, &bound, edge)?;
            matchings[t] = invert(&perm);
            matchings[h] = perm;
        }
        Ok(NField {
            n,
            bundle,
            values,
            matchings,
            policy: MatchingPolicy::NearestAngle,
        })
    }

    /// Relabel the policy that produced the stored matchings. Used when
    /// reloading a serialized field: the matchings themselves are persisted,
    /// so the original derivation policy is a provenance label.
    pub fn with_policy(mut self, policy: MatchingPolicy) -> NField {
        self.policy = policy;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bundle(&self) -> &BundleCocycle {
        &self.bundle
    }

    pub fn policy(&self) -> MatchingPolicy {
        self.policy
    }

    pub fn values(&self, face: usize) -> &[Value] {
        &self.values[face]
    }

    pub fn all_values(&self) -> &[Vec<Value>] {
        &self.values
    }

    /// The matching across halfedge h, from h's face positions to the twin
    /// face's positions.
    pub fn matching(&self, h: HalfedgeId) -> &[usize] {
        &self.matchings[h]
    }

    pub fn matchings(&self) -> &[Vec<usize>] {
        &self.matchings
    }
}

/// The unique bijection minimizing total absolute angular displacement after
/// frame transport, brute-forced over all n! bijections. Errors when any
/// compared pair sits at exactly a half turn, when two bijections tie, or
/// when `pair_bound` is given and some matched pair moves by ≥ the bound.
fn nearest_angle_matching(
    bundle: &BundleCocycle,
    h: HalfedgeId,
    from: &[Value],
    to: &[Value],
    edge: usize,
    pair_bound: Option<&BigRational>,
) -> Result<Vec<usize>, FieldError> {
    let n = from.len();
    let transition = bundle.transition(h);
    let transported: Vec<TurnClass> = from.iter().map(|v| transition.apply(&v.angle)).collect();
    // all pairwise displacements up front; half turns are hard errors
    let mut disp = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let lift = shortest_lift(&transported[i], &to[j].angle)
                .map_err(|_| FieldError::AmbiguousMatching(edge))?;
            disp[i][j] = lift.abs().rational().clone();
        }
    }
    let mut best: Option<(BigRational, Vec<usize>)> = None;
    let mut tied = false;
    for_each_permutation(n, |perm| {
        let total: BigRational = (0..n).map(|i| disp[i][perm[i]].clone()).sum();
        match &best {
            Some((b, bp)) => {
                if &total < b {
                    best = Some((total, perm.to_vec()));
                    tied = false;
                } else if &total == b && bp != perm {
                    tied = true;
                }
            }
            None => best = Some((total, perm.to_vec())),
        }
    });
    let (_, perm) = best.expect("n >= 1");
    if tied {
        return Err(FieldError::AmbiguousMatching(edge));
    }
    if let Some(bound) = pair_bound {
        for i in 0..n {
            if &disp[i][perm[i]] >= bound {
                return Err(FieldError::AmbiguousMatching(edge));
            }
        }
    }
    Ok(perm)
}

/// Matching between two μ_n-orbit value sets {θ_f + j/n} and {θ_g + p/n}:
/// the optimal bijection is an orbit shift j ↦ j + k, and every matched pair
/// moves by the same displacement d_k = (θ_g − θ_f − transport) + k/n. The
/// shift with |d_k| < 1/(2n) is unique when it exists; anything at or beyond
/// the bound is ambiguous (the next shift is equally close or closer).
fn orbit_matching(
    bundle: &BundleCocycle,
    h: HalfedgeId,
    theta_from: &TurnClass,
    theta_to: &TurnClass,
    n: usize,
    bound: &BigRational,
    edge: usize,
) -> Result<Vec<usize>, FieldError> {
    let transported = bundle.transition(h).apply(theta_from);
    for k in 0..n {
        let target = theta_to.add_turn(&Turn::new(k as i64, n as i64));
        let lift = match shortest_lift(&transported, &target) {
            Ok(l) => l,
            Err(_) => continue,
        };
        if lift.abs().rational() < bound {
            return Ok((0..n).map(|j| (j + k) % n).collect());
        }
    }
    Err(FieldError::AmbiguousMatching(edge))
}

/// Match values of equal magnitude; requires magnitudes pairwise distinct on
/// each side and the two magnitude sets equal.
fn by_magnitude_matching(from: &[Value], to: &[Value], edge: usize) -> Result<Vec<usize>, FieldError> {
    let n = from.len();
    let mut perm = vec![usize::MAX; n];
    for i in 0..n {
        let mut hits = (0..n).filter(|&j| to[j].mag == from[i].mag);
        let j = hits.next().ok_or(FieldError::AmbiguousMatching(edge))?;
        if hits.next().is_some() {
            return Err(FieldError::AmbiguousMatching(edge));
        }
        perm[i] = j;
    }
    if !is_permutation(&perm, n) {
        return Err(FieldError::AmbiguousMatching(edge));
    }
    Ok(perm)
}

/// An n-valued nowhere-zero section of a rank-1 bundle over a circle:
/// n distinct nonzero rationals per edge, matched across each vertex.
#[derive(Debug, Clone)]
pub struct CircleNField {
    n: usize,
    line: LineCocycle,
    /// Exactly n values per edge.
    values: Vec<Vec<BigRational>>,
    /// Per vertex v: bijection from value positions of edge_before(v) to
    /// value positions of edge_after(v).
    matchings: Vec<Vec<usize>>,
}

impl CircleNField {
    /// Matchings derived by nearest value after sign transport; ties error.
    pub fn build(line: LineCocycle, values: Vec<Vec<BigRational>>) -> Result<CircleNField, FieldError> {
        let n = values.first().map_or(0, |v| v.len());
        assert!(n >= 1);
        assert_eq!(values.len(), line.base().edge_count());
        Self::check_values(&values, n)?;
        let vcount = line.base().vertex_count();
        let mut matchings = Vec::with_capacity(vcount);
        for v in 0..vcount {
            let from = &values[line.base().edge_before(v)];
            let to = &values[line.base().edge_after(v)];
            matchings.push(nearest_value_matching(line.sign(v), from, to, v)?);
        }
        Ok(CircleNField {
            n,
            line,
            values,
            matchings,
        })
    }

    /// Matchings supplied per vertex.
    pub fn build_explicit(
        line: LineCocycle,
        values: Vec<Vec<BigRational>>,
        matchings: Vec<Vec<usize>>,
    ) -> Result<CircleNField, FieldError> {
        let n = values.first().map_or(0, |v| v.len());
        assert!(n >= 1);
        assert_eq!(values.len(), line.base().edge_count());
        assert_eq!(matchings.len(), line.base().vertex_count());
        Self::check_values(&values, n)?;
        for (v, m) in matchings.iter().enumerate() {
            if !is_permutation(m, n) {
                return Err(FieldError::SizeMismatch(v));
            }
        }
        Ok(CircleNField {
            n,
            line,
            values,
            matchings,
        })
    }

    fn check_values(values: &[Vec<BigRational>], n: usize) -> Result<(), FieldError> {
        for (e, vs) in values.iter().enumerate() {
            if vs.len() != n {
                return Err(FieldError::SizeMismatch(e));
            }
            if vs.iter().any(|v| v.is_zero()) {
                return Err(FieldError::NonpositiveMagnitude(e));
            }
            for i in 0..n {
                for j in (i + 1)..n {
                    if vs[i] == vs[j] {
                        return Err(FieldError::DuplicateValue(e));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn line(&self) -> &LineCocycle {
        &self.line
    }

    pub fn values(&self, edge: usize) -> &[BigRational] {
        &self.values[edge]
    }

    pub fn all_values(&self) -> &[Vec<BigRational>] {
        &self.values
    }

    /// The matching across vertex v, from edge_before(v) positions to
    /// edge_after(v) positions.
    pub fn matching(&self, v: usize) -> &[usize] {
        &self.matchings[v]
    }
}

/// The unique bijection minimizing total |s·from_i − to_{π(i)}|; ties error.
fn nearest_value_matching(
    sign: i8,
    from: &[BigRational],
    to: &[BigRational],
    vertex: usize,
) -> Result<Vec<usize>, FieldError> {
    let n = from.len();
    let s = BigRational::from_integer(BigInt::from(sign as i64));
    let mut disp = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            disp[i][j] = (&from[i] * &s - &to[j]).abs();
        }
    }
    let mut best: Option<(BigRational, Vec<usize>)> = None;
    let mut tied = false;
    for_each_permutation(n, |perm| {
        let total: BigRational = (0..n).map(|i| disp[i][perm[i]].clone()).sum();
        match &best {
            Some((b, bp)) => {
                if &total < b {
                    best = Some((total, perm.to_vec()));
                    tied = false;
                } else if &total == b && bp != perm {
                    tied = true;
                }
            }
            None => best = Some((total, perm.to_vec())),
        }
    });
    let (_, perm) = best.expect("n >= 1");
    if tied {
        return Err(FieldError::AmbiguousMatching(vertex));
    }
    Ok(perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex;
    use std::sync::Arc;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    fn trivial_octa() -> BundleCocycle {
        BundleCocycle::trivial(Arc::new(complex::octahedron()))
    }

    #[test]
    fn n1_build_forced() {
        let b = trivial_octa();
        let values = vec![vec![Value::unit(TurnClass::from((1, 3)))]; 8];
        let f = NField::build(b, values, MatchingPolicy::NearestAngle).unwrap();
        assert_eq!(f.n(), 1);
        for h in 0..f.bundle().base().halfedge_count() {
            assert_eq!(f.matching(h), &[0]);
        }
    }

    #[test]
    fn symmetric_tie_is_ambiguous() {
        let b = trivial_octa();
        let mut values = Vec::new();
        for face in 0..8 {
            if face % 2 == 0 {
                values.push(vec![
                    Value::unit(TurnClass::from((0, 1))),
                    Value::unit(TurnClass::from((1, 2))),
                ]);
            } else {
                values.push(vec![
                    Value::unit(TurnClass::from((1, 4))),
                    Value::unit(TurnClass::from((3, 4))),
                ]);
            }
        }
        // faces of like parity share edges on the octahedron only across
        // mixed-parity pairs? Not guaranteed; either way some adjacency mixes
        // {0,1/2} with {1/4,3/4} or pairs {0,1/2} against itself at a half
        // turn; both situations are ties.
        assert!(matches!(
            NField::build(b, values, MatchingPolicy::NearestAngle),
            Err(FieldError::AmbiguousMatching(_))
        ));
    }

    #[test]
    fn by_magnitude_matches_scales() {
        let b = trivial_octa();
        let values = vec![
            vec![
                Value::new(TurnClass::from((0, 1)), rat(1, 1)),
                Value::new(TurnClass::from((1, 8)), rat(2, 1)),
            ];
            8
        ];
        let f = NField::build(b, values, MatchingPolicy::ByMagnitude).unwrap();
        for h in 0..f.bundle().base().halfedge_count() {
            assert_eq!(f.matching(h), &[0, 1]);
        }
    }

    #[test]
    fn duplicate_value_rejected() {
        let b = trivial_octa();
        let values = vec![vec![Value::unit(TurnClass::from((0, 1))); 2]; 8];
        assert_eq!(
            NField::build(b, values, MatchingPolicy::ByMagnitude).unwrap_err(),
            FieldError::DuplicateValue(0)
        );
    }

    #[test]
    fn from_sections_identity_matchings() {
        let b = trivial_octa();
        let f1 = SingleField::constant(8, TurnClass::from((0, 1)));
        let f2 = SingleField::constant(8, TurnClass::from((1, 3)));
        let nf = NField::from_sections(b, &[f1, f2], &[rat(1, 1), rat(2, 1)]).unwrap();
        assert_eq!(nf.n(), 2);
        for h in 0..nf.bundle().base().halfedge_count() {
            assert_eq!(nf.matching(h), &[0, 1]);
        }
    }

    #[test]
    fn equal_scales_rejected() {
        let b = trivial_octa();
        let f1 = SingleField::constant(8, TurnClass::from((0, 1)));
        let f2 = SingleField::constant(8, TurnClass::from((1, 3)));
        assert_eq!(
            NField::from_sections(b, &[f1, f2], &[rat(2, 1), rat(2, 1)]).unwrap_err(),
            FieldError::ScalesNotDistinct
        );
    }

    #[test]
    fn from_quotient_n1_is_identity() {
        let b = trivial_octa();
        let theta: Vec<TurnClass> = (0..8).map(|f| TurnClass::from((f, 17))).collect();
        let nf = NField::from_quotient(b, &theta, 1).unwrap();
        for (f, t) in theta.iter().enumerate() {
            assert_eq!(nf.values(f), &[Value::unit(t.clone())]);
        }
    }

    #[test]
    fn from_quotient_orbit_values() {
        let b = trivial_octa();
        let theta = vec![TurnClass::from((0, 1)); 8];
        let nf = NField::from_quotient(b, &theta, 3).unwrap();
        assert_eq!(
            nf.values(0),
            &[
                Value::unit(TurnClass::from((0, 1))),
                Value::unit(TurnClass::from((1, 3))),
                Value::unit(TurnClass::from((2, 3))),
            ]
        );
        for h in 0..nf.bundle().base().halfedge_count() {
            assert_eq!(nf.matching(h), &[0, 1, 2]);
        }
    }

    #[test]
    fn from_quotient_bound_enforced() {
        // adjacent directions 1/6 apart sit exactly at the 1/(2n) bound for
        // n = 3: the two orbit shifts tie
        let b = trivial_octa();
        let theta: Vec<TurnClass> = (0..8)
            .map(|f| TurnClass::from(((f % 2) as i64, 6)))
            .collect();
        assert!(matches!(
            NField::from_quotient(b, &theta, 3),
            Err(FieldError::AmbiguousMatching(_))
        ));
        // a 1/4 jump reduces to a 1/12 displacement modulo the 1/3 orbit,
        // which is inside the bound: the wrapped matching succeeds
        let b = trivial_octa();
        let theta: Vec<TurnClass> = (0..8)
            .map(|f| TurnClass::from(((f % 2) as i64, 4)))
            .collect();
        assert!(NField::from_quotient(b, &theta, 3).is_ok());
    }

    #[test]
    fn explicit_matchings_validated() {
        let b = trivial_octa();
        let values = vec![
            vec![
                Value::unit(TurnClass::from((0, 1))),
                Value::unit(TurnClass::from((1, 2))),
            ];
            8
        ];
        // records for every adjacency: identity everywhere
        let base = b.base().clone();
        let mut records = Vec::new();
        for h in 0..base.halfedge_count() {
            let t = base.twin(h);
            if h > t {
                continue;
            }
            records.push(ExplicitMatching {
                from_face: base.halfedge_face(h),
                to_face: base.halfedge_face(t),
                perm: vec![0, 1],
            });
        }
        let f = NField::build_explicit(b, values.clone(), &records).unwrap();
        assert_eq!(f.policy(), MatchingPolicy::Explicit);

        // missing a record fails
        let b2 = trivial_octa();
        assert!(matches!(
            NField::build_explicit(b2, values, &records[..records.len() - 1]),
            Err(FieldError::MissingMatching(_, _))
        ));
    }

    #[test]
    fn circle_field_nearest_matching() {
        let line = LineCocycle::trivial(complex::ngon(4));
        let values = vec![vec![rat(1, 1), rat(3, 1)]; 4];
        let f = CircleNField::build(line, values).unwrap();
        for v in 0..4 {
            assert_eq!(f.matching(v), &[0, 1]);
        }
        // across a sign flip with equal value sets the two bijections always
        // tie (|a+b| + |a+b| = 2a + 2b either way): explicit matchings are
        // required there
        let line = LineCocycle::moebius(complex::ngon(4));
        let values = vec![vec![rat(1, 1), rat(3, 1)]; 4];
        assert!(matches!(
            CircleNField::build(line, values),
            Err(FieldError::AmbiguousMatching(0))
        ));
    }

    #[test]
    fn circle_field_rejects_zero_value() {
        let line = LineCocycle::trivial(complex::ngon(3));
        let values = vec![vec![rat(0, 1), rat(1, 1)]; 3];
        assert_eq!(
            CircleNField::build(line, values).unwrap_err(),
            FieldError::NonpositiveMagnitude(0)
        );
    }
}
