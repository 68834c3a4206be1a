//! Discrete vector bundles as transition cocycles between face frames.
//!
//! A rank-2 bundle over a surface assigns every halfedge a lifted rotation
//! (a [`Turn`], not reduced mod 1) and an optional reflection flag. The
//! bundle itself only depends on the mod-1 classes of the transitions; the
//! integer parts of the lifts encode where the twisting of the bundle is
//! concentrated. Around every vertex link the composite transition must be a
//! rotation by an exact integer H(v); only the total Σ_v H(v) — the Euler
//! number — is invariant under re-lifting.
//!
//! Rank-1 bundles over circles are a per-vertex sign cocycle.

use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::complex::{CircleComplex, HalfedgeId, Orientation, SurfaceComplex, VertexLink};
use crate::turn::{Turn, TurnClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BundleError {
    #[error("base complex is not orientable")]
    NotOrientable,
    #[error("cocycle has reflection flags")]
    HasReflections,
    #[error("cocycle violation at vertex {0}: link composite is not an integer rotation")]
    CocycleViolation(usize),
    #[error("transition pair across edge {0} does not compose to the identity")]
    PairInconsistent(usize),
    #[error("64 consecutive degenerate random sections; bundle transitions defeat sampling")]
    ResampleLimitExceeded,
    #[error("transition list has wrong length {0}")]
    WrongLength(usize),
}

/// A single frame-to-frame transition: `angle_in_target = turn ± angle_in_source`
/// (minus when `reflect` is set). The turn is a lifted value; its integer part
/// is meaningful.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub reflect: bool,
    pub turn: Turn,
}

impl Transition {
    pub fn identity() -> Transition {
        Transition {
            reflect: false,
            turn: Turn::zero(),
        }
    }

    pub fn rotation(turn: Turn) -> Transition {
        Transition {
            reflect: false,
            turn,
        }
    }

    /// Apply to a direction class.
    pub fn apply(&self, theta: &TurnClass) -> TurnClass {
        if self.reflect {
            theta.neg().add_turn(&self.turn)
        } else {
            theta.add_turn(&self.turn)
        }
    }

    pub fn inverse(&self) -> Transition {
        if self.reflect {
            self.clone()
        } else {
            Transition {
                reflect: false,
                turn: -&self.turn,
            }
        }
    }

    /// `self ∘ first`: apply `first`, then `self`, tracking lifted turns.
    pub fn compose_after(&self, first: &Transition) -> Transition {
        let t = if self.reflect {
            &self.turn - &first.turn
        } else {
            &self.turn + &first.turn
        };
        Transition {
            reflect: self.reflect != first.reflect,
            turn: t,
        }
    }
}

/// A discrete rank-2 vector bundle over a surface complex.
///
/// The mod-1 classes of the transitions are the bundle; the integer parts of
/// the lifts are extra structure recording where its twisting sits. Each
/// edge's two lifted records are calibrated to the two endpoints of the edge
/// (see [`BundleCocycle::crossing_transition`]): when the link of a vertex
/// crosses an edge, it reads the lift assigned to that vertex — possibly as
/// an exact inverse when the traversal runs against it. This makes every link
/// traversal's holonomy change sign under reversal, so indices are
/// orientation-covariant.
#[derive(Debug, Clone)]
pub struct BundleCocycle {
    base: Arc<SurfaceComplex>,
    /// One transition per halfedge, indexed by halfedge id. The transition of
    /// halfedge h maps the frame of h's face to the frame of the twin face.
    transitions: Vec<Transition>,
    /// Deterministic pseudo-orientation of the base used to calibrate lifts.
    flips: Vec<bool>,
}

/// The halfedge of `q`'s edge whose lift is calibrated to vertex `v`: the one
/// whose flip-corrected direction ends at v. When the pseudo-orientation
/// conflicts across the edge (a reflecting seam) both corrected directions
/// agree; the tie breaks by halfedge id, still giving the two endpoints the
/// two distinct halfedges.
fn assigned_halfedge(
    base: &SurfaceComplex,
    flips: &[bool],
    v: usize,
    q: HalfedgeId,
) -> HalfedgeId {
    let t = base.twin(q);
    let corrected_end = |h: HalfedgeId| {
        let (a, b) = base.halfedge_vertices(h);
        if flips[h / 3] {
            a
        } else {
            b
        }
    };
    match (corrected_end(q) == v, corrected_end(t) == v) {
        (true, false) => q,
        (false, true) => t,
        (true, true) => q.min(t),
        (false, false) => q.max(t),
    }
}

impl BundleCocycle {
    /// Validate pairwise consistency and the vertex cocycle condition.
    pub fn new(
        base: Arc<SurfaceComplex>,
        transitions: Vec<Transition>,
    ) -> Result<BundleCocycle, BundleError> {
        if transitions.len() != base.halfedge_count() {
            return Err(BundleError::WrongLength(transitions.len()));
        }
        let flips = base.bfs_flips();
        let b = BundleCocycle {
            base,
            transitions,
            flips,
        };
        for h in 0..b.transitions.len() {
            let t = b.base.twin(h);
            let fwd = &b.transitions[h];
            let bwd = &b.transitions[t];
            if fwd.reflect != bwd.reflect {
                return Err(BundleError::PairInconsistent(b.base.edge_id(h)));
            }
            let composite = bwd.compose_after(fwd);
            // identity as a bundle map: rotation by an integer
            if composite.reflect || !composite.turn.is_integer() {
                return Err(BundleError::PairInconsistent(b.base.edge_id(h)));
            }
        }
        for v in 0..b.base.vertex_count() {
            let link = b.base.vertex_link_deterministic(v);
            let composite = b.link_composite(&link);
            if composite.reflect || !composite.turn.is_integer() {
                return Err(BundleError::CocycleViolation(v));
            }
        }
        Ok(b)
    }

    /// The trivial (identity-transition) bundle.
    pub fn trivial(base: Arc<SurfaceComplex>) -> BundleCocycle {
        let n = base.halfedge_count();
        let flips = base.bfs_flips();
        BundleCocycle {
            base,
            transitions: vec![Transition::identity(); n],
            flips,
        }
    }

    pub fn base(&self) -> &Arc<SurfaceComplex> {
        &self.base
    }

    pub fn transition(&self, h: HalfedgeId) -> &Transition {
        &self.transitions[h]
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn has_reflections(&self) -> bool {
        self.transitions.iter().any(|t| t.reflect)
    }

    /// The lifted transition to apply when the link of `v` crosses halfedge
    /// `q` (moving from q's face to the twin face): the lift assigned to v,
    /// inverted exactly when the traversal runs against it. The mod-1 class
    /// always agrees with `transition(q)`; only the integer part differs.
    pub fn crossing_transition(&self, v: usize, q: HalfedgeId) -> Transition {
        let a = assigned_halfedge(&self.base, &self.flips, v, q);
        if a == q {
            self.transitions[q].clone()
        } else {
            self.transitions[a].inverse()
        }
    }

    /// Composite of the transitions crossed along a vertex link, mapping the
    /// frame of the link's first face to itself.
    pub fn link_composite(&self, link: &VertexLink) -> Transition {
        let mut acc = Transition::identity();
        for step in &link.steps {
            acc = self
                .crossing_transition(link.vertex, step.crossing)
                .compose_after(&acc);
        }
        acc
    }

    /// The integer holonomy H(v) of the link traversed in the direction of
    /// the supplied link.
    pub fn holonomy(&self, link: &VertexLink) -> Result<BigInt, BundleError> {
        let composite = self.link_composite(link);
        if composite.reflect {
            return Err(BundleError::CocycleViolation(link.vertex));
        }
        composite
            .turn
            .to_integer()
            .ok_or(BundleError::CocycleViolation(link.vertex))
    }

    /// The Euler number Σ_v H(v), measured in the given global orientation.
    pub fn euler_number_with(&self, ori: &Orientation) -> Result<BigInt, BundleError> {
        if !ori.is_orientable() {
            return Err(BundleError::NotOrientable);
        }
        if self.has_reflections() {
            return Err(BundleError::HasReflections);
        }
        let mut total = BigInt::zero();
        for v in 0..self.base.vertex_count() {
            let link = self.base.vertex_link_oriented(v, ori);
            total += self.holonomy(&link)?;
        }
        Ok(total)
    }

    /// The Euler number in the canonical orientation of the base.
    pub fn euler_number(&self) -> Result<BigInt, BundleError> {
        let ori = self.base.orient();
        self.euler_number_with(&ori)
    }

    /// Re-lift one halfedge: adds `k` turns to `h` and `−k` to its twin.
    /// Changes the holonomy at the two endpoints of the edge by ±k and leaves
    /// the Euler number fixed.
    pub fn relifted(&self, h: HalfedgeId, k: i64) -> BundleCocycle {
        let mut transitions = self.transitions.clone();
        transitions[h].turn += Turn::from_integer(k);
        let t = self.base.twin(h);
        transitions[t].turn += Turn::from_integer(-k);
        BundleCocycle {
            base: Arc::clone(&self.base),
            transitions,
            flips: self.flips.clone(),
        }
    }

    /// The parity of the total mod-2 index of a pseudo-random nowhere-zero
    /// section generated from `seed`; well-defined independently of the seed.
    pub fn sw_top(&self, seed: u64) -> Result<u8, BundleError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..64 {
            let field = SingleField::random(self.base.face_count(), &mut rng);
            match crate::index::single_field_parity(self, &field) {
                Ok(bit) => return Ok(bit),
                Err(_) => continue,
            }
        }
        Err(BundleError::ResampleLimitExceeded)
    }
}

/// A canonical cocycle whose Euler number equals the Euler characteristic of
/// the base, standing in for a tangent bundle.
///
/// All transitions are identity except |χ| integer corrections: at each of
/// the first |χ| vertices, one link crossing receives a lift of ±1 turn (its
/// partner keeps lift 0), concentrating H(v) = sign(χ) there. On a
/// non-orientable base the gluing conflicts of the orientation search become
/// reflection flags, so the reflection cycle carries w₁ of the base.
pub fn tangent_like(base: &Arc<SurfaceComplex>) -> BundleCocycle {
    let ori = base.orient();
    let flips = base.bfs_flips();
    let mut transitions = vec![Transition::identity(); base.halfedge_count()];

    if !ori.is_orientable() {
        // The BFS gluing conflicts are the orientation-reversing seam.
        for h in 0..base.halfedge_count() {
            let t = base.twin(h);
            if h > t {
                continue;
            }
            let (a, _) = base.halfedge_vertices(h);
            let (c, _) = base.halfedge_vertices(t);
            let same_direction = a == c;
            let consistent = if same_direction {
                flips[h / 3] != flips[t / 3]
            } else {
                flips[h / 3] == flips[t / 3]
            };
            if !consistent {
                transitions[h].reflect = true;
                transitions[t].reflect = true;
            }
        }
    }

    let chi = base.euler_characteristic();
    let sign = if chi >= 0 { 1i64 } else { -1i64 };
    for v in 0..chi.unsigned_abs() as usize {
        let link = match &ori {
            Orientation::Oriented { .. } => base.vertex_link_oriented(v, &ori),
            Orientation::Nonorientable => base.vertex_link_deterministic(v),
        };
        let step = link
            .steps
            .iter()
            .find(|s| !transitions[s.crossing].reflect)
            .expect("every link has a reflection-free crossing");
        // bump H(v) by `sign` through the lift calibrated to v
        let a = assigned_halfedge(base, &flips, v, step.crossing);
        if a == step.crossing {
            transitions[a].turn += Turn::from_integer(sign);
        } else {
            transitions[a].turn += Turn::from_integer(-sign);
        }
    }

    BundleCocycle::new(Arc::clone(base), transitions).expect("constructed cocycle is valid")
}

/// A single-valued nowhere-zero section: one (direction, magnitude) per face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingleField {
    pub angles: Vec<TurnClass>,
    pub magnitudes: Vec<BigRational>,
}

impl SingleField {
    pub fn new(angles: Vec<TurnClass>, magnitudes: Vec<BigRational>) -> SingleField {
        assert_eq!(angles.len(), magnitudes.len());
        assert!(magnitudes.iter().all(|m| m.is_positive()));
        SingleField { angles, magnitudes }
    }

    pub fn constant(face_count: usize, angle: TurnClass) -> SingleField {
        SingleField {
            angles: vec![angle; face_count],
            magnitudes: vec![BigRational::from_integer(BigInt::from(1)); face_count],
        }
    }

    /// Angles drawn with denominator 3^6; differences of such classes can
    /// never hit an exact half turn, so lift comparisons always resolve.
    pub fn random(face_count: usize, rng: &mut impl Rng) -> SingleField {
        const DEN: i64 = 729;
        let mut angles = Vec::with_capacity(face_count);
        let mut magnitudes = Vec::with_capacity(face_count);
        for _ in 0..face_count {
            let a = rng.gen_range(0..DEN);
            angles.push(TurnClass::from((a, DEN)));
            let m = rng.gen_range(1..=16i64);
            magnitudes.push(BigRational::new(BigInt::from(m), BigInt::from(4)));
        }
        SingleField { angles, magnitudes }
    }
}

/// A discrete rank-1 bundle over a circle: a sign per vertex crossing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineCocycle {
    base: CircleComplex,
    signs: Vec<i8>,
}

impl LineCocycle {
    pub fn new(base: CircleComplex, signs: Vec<i8>) -> LineCocycle {
        assert_eq!(signs.len(), base.vertex_count());
        assert!(signs.iter().all(|&s| s == 1 || s == -1));
        LineCocycle { base, signs }
    }

    pub fn trivial(base: CircleComplex) -> LineCocycle {
        let n = base.vertex_count();
        LineCocycle {
            base,
            signs: vec![1; n],
        }
    }

    /// One −1 sign at vertex 0: the Möbius line bundle.
    pub fn moebius(base: CircleComplex) -> LineCocycle {
        let mut c = LineCocycle::trivial(base);
        c.signs[0] = -1;
        c
    }

    pub fn base(&self) -> &CircleComplex {
        &self.base
    }

    pub fn sign(&self, v: usize) -> i8 {
        self.signs[v]
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// w₁[M]: the parity of the number of −1 signs.
    pub fn line_w1(&self) -> u8 {
        (self.signs.iter().filter(|&&s| s == -1).count() % 2) as u8
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex;

    fn arc(c: SurfaceComplex) -> Arc<SurfaceComplex> {
        Arc::new(c)
    }

    #[test]
    fn trivial_bundle_euler_zero() {
        let b = BundleCocycle::trivial(arc(complex::torus_grid(4)));
        assert_eq!(b.euler_number().unwrap(), BigInt::from(0));
    }

    #[test]
    fn tangent_like_matches_chi() {
        for c in [
            complex::octahedron(),
            complex::icosahedron(),
            complex::torus_grid(4),
            complex::genus_surface(2),
            complex::genus_surface(3),
        ] {
            let chi = c.euler_characteristic();
            let b = tangent_like(&arc(c));
            assert_eq!(b.euler_number().unwrap(), BigInt::from(chi));
        }
    }

    #[test]
    fn tangent_like_nonorientable_valid() {
        for c in [complex::projective_plane(), complex::klein_bottle()] {
            let b = tangent_like(&arc(c));
            assert!(b.has_reflections());
            assert_eq!(b.euler_number(), Err(BundleError::NotOrientable));
        }
    }

    #[test]
    fn relift_preserves_euler_number() {
        let base = arc(complex::octahedron());
        let b = tangent_like(&base);
        let e = b.euler_number().unwrap();
        let mut cur = b;
        for (h, k) in [(0usize, 1i64), (5, -2), (11, 3), (17, 1)] {
            cur = cur.relifted(h, k);
            assert_eq!(cur.euler_number().unwrap(), e);
        }
    }

    #[test]
    fn relift_moves_holonomy_between_endpoints() {
        let base = arc(complex::octahedron());
        let b = BundleCocycle::trivial(Arc::clone(&base));
        let ori = base.orient();
        let relifted = b.relifted(0, 1);
        let mut nonzero = Vec::new();
        for v in 0..base.vertex_count() {
            let link = base.vertex_link_oriented(v, &ori);
            let h = relifted.holonomy(&link).unwrap();
            if !h.is_zero() {
                nonzero.push((v, h));
            }
        }
        nonzero.sort();
        assert_eq!(nonzero.len(), 2);
        let sum: BigInt = nonzero.iter().map(|(_, h)| h.clone()).sum();
        assert_eq!(sum, BigInt::zero());
    }

    #[test]
    fn euler_rejects_reflections() {
        let b = tangent_like(&arc(complex::klein_bottle()));
        assert_eq!(b.euler_number(), Err(BundleError::NotOrientable));
    }

    #[test]
    fn pair_inconsistency_rejected() {
        let base = arc(complex::octahedron());
        let mut transitions = vec![Transition::identity(); base.halfedge_count()];
        transitions[0].turn = Turn::from((1, 3));
        // twin left at zero: composite is 1/3, not an integer
        assert!(matches!(
            BundleCocycle::new(base, transitions),
            Err(BundleError::PairInconsistent(_))
        ));
    }

    #[test]
    fn cocycle_violation_rejected() {
        let base = arc(complex::octahedron());
        let mut transitions = vec![Transition::identity(); base.halfedge_count()];
        // a non-integral rotation on one pair, consistent across the edge but
        // breaking integrality at the endpoints
        transitions[0].turn = Turn::from((1, 3));
        let t = base.twin(0);
        transitions[t].turn = Turn::from((-1, 3));
        assert!(matches!(
            BundleCocycle::new(base, transitions),
            Err(BundleError::CocycleViolation(_))
        ));
    }

    #[test]
    fn line_w1_parity() {
        let b = LineCocycle::trivial(complex::ngon(5));
        assert_eq!(b.line_w1(), 0);
        let b = LineCocycle::moebius(complex::ngon(5));
        assert_eq!(b.line_w1(), 1);
        let mut signs = vec![1i8; 5];
        signs[1] = -1;
        signs[3] = -1;
        let b = LineCocycle::new(complex::ngon(5), signs);
        assert_eq!(b.line_w1(), 0);
    }
}
