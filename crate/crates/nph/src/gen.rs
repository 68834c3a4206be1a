//! Deterministic example generators: the shipped fields and bundles used by
//! the CLI `gen` command and the test suite.

use std::collections::HashSet;
use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bundle::{tangent_like, BundleCocycle, SingleField, Transition};
use crate::complex::{
    genus_surface, icosahedron, klein_bottle, octahedron, projective_plane, torus_grid,
    SurfaceComplex,
};
use crate::degree::{default_lens_samples, lens_map, StructuredCircleMap};
use crate::field::{ExplicitMatching, FieldError, NField, Value};
use crate::index::{local_index, Mode};
use crate::turn::{Turn, TurnClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

/// The shipped base meshes by name.
pub fn base_by_name(name: &str) -> Result<Arc<SurfaceComplex>, GenError> {
    let c = match name {
        "sphere" | "octahedron" => octahedron(),
        "icosahedron" => icosahedron(),
        "torus" => torus_grid(4),
        "genus2" => genus_surface(2),
        "rp2" | "projective-plane" => projective_plane(),
        "klein" => klein_bottle(),
        other => return Err(GenError::UnknownGenerator(other.to_string())),
    };
    Ok(Arc::new(c))
}

/// The shipped n = 1 field: the constant section of the tangent-like cocycle.
/// Its index sum equals the Euler characteristic of the base.
pub fn tangent_like_field(base: &Arc<SurfaceComplex>) -> NField {
    let bundle = tangent_like(base);
    let field = SingleField::constant(base.face_count(), TurnClass::from((0, 1)));
    NField::from_sections(bundle, &[field], &[BigRational::from_integer(BigInt::from(1))])
        .expect("constant single field is valid")
}

/// The μ_n-quotient field of the constant direction over the tangent-like
/// cocycle. Requires an orientable base (the tangent-like cocycle is
/// reflection-free exactly then).
pub fn quotient_field(base: &Arc<SurfaceComplex>, n: usize) -> Result<NField, FieldError> {
    let bundle = tangent_like(base);
    let theta = vec![TurnClass::from((0, 1)); base.face_count()];
    NField::from_quotient(bundle, &theta, n)
}

/// A single field over the trivial bundle whose local index at `vertex` is
/// `d` ∈ {−1, 0, 1}: the angles wind `d` times along the vertex link and are
/// zero elsewhere, with the exact half-turn sample nudged off 1/2.
fn winding_field(base: &Arc<SurfaceComplex>, vertex: usize, d: i64) -> SingleField {
    assert!(d.abs() <= 1);
    let mut field = SingleField::constant(base.face_count(), TurnClass::from((0, 1)));
    if d == 0 {
        return field;
    }
    let ori = base.orient();
    let link = if ori.is_orientable() {
        base.vertex_link_oriented(vertex, &ori)
    } else {
        base.vertex_link_deterministic(vertex)
    };
    let l = link.len() as i64;
    for (t, step) in link.steps.iter().enumerate() {
        let mut a = Turn::new(d * t as i64, l);
        if a.fract() == Turn::new(1, 2) {
            a = a - Turn::new(d.signum(), 2 * l);
        }
        field.angles[step.face] = a.class();
    }
    field
}

/// The scaled-sections construction: n scaled single sections over the trivial
/// bundle on `base`, with constituent indices at `vertex` summing to `target`.
/// Realizes every local index value with |target| ≤ n.
pub fn scaled_sections_field(
    base: &Arc<SurfaceComplex>,
    n: usize,
    target: i64,
    vertex: usize,
) -> Result<NField, GenError> {
    if n == 0 {
        return Err(GenError::InvalidParams("n must be positive".into()));
    }
    if target.unsigned_abs() > n as u64 {
        return Err(GenError::InvalidParams(format!(
            "target index {} is out of range for n = {}",
            target, n
        )));
    }
    if vertex >= base.vertex_count() {
        return Err(GenError::InvalidParams(format!("vertex {} out of range", vertex)));
    }
    let sign = target.signum();
    let fields: Vec<SingleField> = (0..n)
        .map(|i| {
            let d = if (i as i64) < target.abs() { sign } else { 0 };
            winding_field(base, vertex, d)
        })
        .collect();
    let scales: Vec<BigRational> =
        (1..=n).map(|i| BigRational::from_integer(BigInt::from(i as i64))).collect();
    let bundle = BundleCocycle::trivial(Arc::clone(base));
    NField::from_sections(bundle, &fields, &scales)
        .map_err(|e| GenError::InvalidParams(format!("section construction failed: {e}")))
}

/// A seeded random n-valued field over the tangent-like cocycle of `base`:
/// per-face distinct random angles with denominator 3^6 (never an exact half
/// turn apart), random magnitudes in quarters, and an independent random
/// matching permutation per adjacency. Valid on any base, orientable or not.
pub fn random_nfield(base: &Arc<SurfaceComplex>, n: usize, seed: u64) -> NField {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bundle = tangent_like(base);
    const DEN: i64 = 729;
    let mut values = Vec::with_capacity(base.face_count());
    for _ in 0..base.face_count() {
        let mut angles: Vec<i64> = Vec::with_capacity(n);
        while angles.len() < n {
            let a = rng.gen_range(0..DEN);
            if !angles.contains(&a) {
                angles.push(a);
            }
        }
        let vs: Vec<Value> = angles
            .into_iter()
            .map(|a| {
                let m = rng.gen_range(1..=16i64);
                Value::new(TurnClass::from((a, DEN)), BigRational::new(BigInt::from(m), BigInt::from(4)))
            })
            .collect();
        values.push(vs);
    }
    let mut records = Vec::new();
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    for h in 0..base.halfedge_count() {
        let t = base.twin(h);
        if h > t {
            continue;
        }
        let f = base.halfedge_face(h);
        let g = base.halfedge_face(t);
        let key = (f.min(g), f.max(g));
        if !seen.insert(key) {
            continue;
        }
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            perm.swap(i, j);
        }
        records.push(ExplicitMatching { from_face: f, to_face: g, perm });
    }
    NField::build_explicit(bundle, values, &records).expect("random field construction is valid")
}

/// The lens family as a structured circle map.
pub fn lens_circle(n: usize, d: i64) -> StructuredCircleMap {
    lens_map(n, d, default_lens_samples(n, d))
}

/// The lemon-quartet 2-valued line field on the octahedron: four equatorial
/// singularities of local index 1 (each with 2-cycle monodromy), regular
/// poles, and index sum 4 = 2·e.
///
/// Construction: value sets {0, 1/2} on every face; quarter-turn transitions
/// crossing each pole's link in its oriented sense (giving the bundle Euler
/// number 2); half-turn transitions on the opposite equatorial edges {1,2}
/// and {3,4}, which restore the integrality of the equatorial holonomies and
/// carry the only sheet-swap matchings. Each equatorial vertex then crosses
/// exactly one swap edge, so its monodromy is the 2-cycle and the half turn
/// of field rotation per circuit makes the double-circuit trace wind once.
pub fn sphere_line_field() -> NField {
    let base = Arc::new(octahedron());
    let ori = base.orient();

    let mut transitions = vec![Transition::identity(); base.halfedge_count()];
    for pole in [0usize, 5] {
        let link = base.vertex_link_oriented(pole, &ori);
        for step in &link.steps {
            transitions[step.crossing] = Transition::rotation(Turn::new(1, 4));
            transitions[base.twin(step.crossing)] = Transition::rotation(Turn::new(-1, 4));
        }
    }
    let swap_edges = [(1usize, 2usize), (3, 4)];
    for h in 0..base.halfedge_count() {
        let (a, b) = base.halfedge_vertices(h);
        if swap_edges.contains(&(a.min(b), a.max(b))) {
            transitions[h] = Transition::rotation(Turn::new(1, 2));
        }
    }
    let bundle =
        BundleCocycle::new(Arc::clone(&base), transitions).expect("lemon cocycle is valid");

    let values: Vec<Vec<Value>> = (0..base.face_count())
        .map(|_| {
            vec![
                Value::unit(TurnClass::from((0, 1))),
                Value::unit(TurnClass::from((1, 2))),
            ]
        })
        .collect();
    let mut records = Vec::new();
    for h in 0..base.halfedge_count() {
        let t = base.twin(h);
        if h > t {
            continue;
        }
        let (a, b) = base.halfedge_vertices(h);
        let perm = if swap_edges.contains(&(a.min(b), a.max(b))) {
            vec![1, 0]
        } else {
            vec![0, 1]
        };
        records.push(ExplicitMatching {
            from_face: base.halfedge_face(h),
            to_face: base.halfedge_face(t),
            perm,
        });
    }
    let field =
        NField::build_explicit(bundle, values, &records).expect("lemon field is valid");
    debug_assert!((0..6).all(|v| {
        let want = if v == 0 || v == 5 { 0 } else { 1 };
        local_index(&field, v, Mode::Integer).unwrap().index == BigInt::from(want)
    }));
    field
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::monodromy;
    use crate::index::{sigma_minus, verify_theorem};

    #[test]
    fn tangent_like_sums_to_chi() {
        for name in ["sphere", "torus", "genus2", "icosahedron"] {
            let base = base_by_name(name).unwrap();
            let f = tangent_like_field(&base);
            let verdict = verify_theorem(&f, Mode::Integer).unwrap();
            assert!(verdict.pass, "{name}");
            assert_eq!(verdict.lhs, BigInt::from(base.euler_characteristic()), "{name}");
        }
    }

    #[test]
    fn quotient_fields_verify() {
        for name in ["sphere", "torus", "genus2"] {
            let base = base_by_name(name).unwrap();
            let chi = base.euler_characteristic();
            for n in 1..=4usize {
                let f = quotient_field(&base, n).unwrap();
                let verdict = verify_theorem(&f, Mode::Integer).unwrap();
                assert!(verdict.pass, "{name} n={n}");
                assert_eq!(verdict.lhs, BigInt::from(n as i64 * chi), "{name} n={n}");
            }
        }
    }

    #[test]
    fn scaled_sections_hit_target_index() {
        let base = base_by_name("torus").unwrap();
        for target in -3i64..=3 {
            let f = scaled_sections_field(&base, 3, target, 5).unwrap();
            let report = local_index(&f, 5, Mode::Integer).unwrap();
            assert_eq!(report.index, BigInt::from(target), "target {target}");
            assert!(monodromy(&f, 5).is_trivial());
            let verdict = verify_theorem(&f, Mode::Integer).unwrap();
            assert!(verdict.pass);
            assert_eq!(verdict.lhs, BigInt::from(0));
        }
    }

    #[test]
    fn scaled_sections_rejects_out_of_range() {
        let base = base_by_name("torus").unwrap();
        assert!(scaled_sections_field(&base, 2, 3, 0).is_err());
        assert!(scaled_sections_field(&base, 3, 1, 999).is_err());
    }

    #[test]
    fn lemon_quartet_distribution() {
        let f = sphere_line_field();
        let verdict = verify_theorem(&f, Mode::Integer).unwrap();
        assert!(verdict.pass);
        assert_eq!(verdict.lhs, BigInt::from(4));
        for v in 0..6 {
            let report = local_index(&f, v, Mode::Integer).unwrap();
            let expected = if v == 0 || v == 5 { 0 } else { 1 };
            assert_eq!(report.index, BigInt::from(expected), "vertex {v}");
            let m = monodromy(&f, v);
            assert_eq!(m.is_trivial(), v == 0 || v == 5, "vertex {v}");
        }
        let (sing, parity) = sigma_minus(&f).unwrap();
        assert_eq!(sing, vec![1, 2, 3, 4]);
        assert_eq!(parity, 0);
    }

    #[test]
    fn random_fields_verify_and_are_deterministic() {
        for name in ["sphere", "torus"] {
            let base = base_by_name(name).unwrap();
            for n in 1..=3usize {
                for seed in 0..5u64 {
                    let f = random_nfield(&base, n, seed);
                    let verdict = verify_theorem(&f, Mode::Integer).unwrap();
                    assert!(verdict.pass, "{name} n={n} seed={seed}");
                }
            }
            let a = random_nfield(&base, 3, 42);
            let b = random_nfield(&base, 3, 42);
            assert_eq!(a.all_values(), b.all_values());
            assert_eq!(a.matchings(), b.matchings());
        }
    }

    #[test]
    fn random_fields_mod2_on_nonorientable() {
        for name in ["rp2", "klein"] {
            let base = base_by_name(name).unwrap();
            for n in 1..=3usize {
                for seed in 0..5u64 {
                    let f = random_nfield(&base, n, seed);
                    let verdict = verify_theorem(&f, Mode::Mod2).unwrap();
                    assert!(verdict.pass, "{name} n={n} seed={seed}");
                }
            }
        }
    }

    #[test]
    fn lens_circle_matches_module() {
        let m = lens_circle(4, 2);
        assert_eq!(m.components().len(), 2);
        assert_eq!(crate::degree::degree_circle(&m).unwrap(), BigInt::from(2));
    }
}
