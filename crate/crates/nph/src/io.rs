//! JSON file formats: meshes, bundles, fields, reports, resolutions, and
//! degree inputs/outputs.
//!
//! All rationals are quoted strings "p/q" (or "p"); keys are lowercase;
//! unknown keys are ignored on input. Serialization is deterministic, and
//! `parse(serialize(x))` reproduces `x` bit-exactly for the mesh, bundle, and
//! field schemas.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bundle::{BundleCocycle, BundleError, LineCocycle, Transition};
use crate::complex::{CircleComplex, ComplexError, SurfaceComplex};
use crate::cover::BranchedResolution;
use crate::degree::{
    degree_circle, lefschetz, DegreeError, StructuredCircleMap,
};
use crate::field::{
    CircleNField, ExplicitMatching, FieldError, MatchingPolicy, NField, Value,
};
use crate::index::{Mode, VerificationVerdict};
use crate::turn::{SampledLoop, Turn, TurnClass, TurnError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Turn(#[from] TurnError),
    #[error("invalid mesh: {0}")]
    Complex(#[from] ComplexError),
    #[error("invalid bundle: {0}")]
    Bundle(#[from] BundleError),
    #[error("invalid field: {0}")]
    Field(#[from] FieldError),
    #[error("invalid degree input: {0}")]
    Degree(#[from] DegreeError),
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialization is infallible");
    s.push('\n');
    s
}

fn parse_rational(s: &str) -> Result<BigRational, IoError> {
    Ok(Turn::parse(s)?.rational().clone())
}

fn show_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

// ---------------------------------------------------------------------------
// Mesh
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct MeshDto {
    dim: u8,
    vertices: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    faces: Option<Vec<[usize; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coords: Option<Vec<[f64; 3]>>,
}

/// A parsed mesh: a surface (dim 2) or a circle (dim 1).
pub enum Mesh {
    Surface(Arc<SurfaceComplex>),
    Circle(CircleComplex),
}

pub fn surface_to_json(c: &SurfaceComplex) -> String {
    pretty(&MeshDto {
        dim: 2,
        vertices: c.vertex_count(),
        faces: Some(c.faces().to_vec()),
        coords: c.coords().map(|cs| cs.to_vec()),
    })
}

pub fn circle_to_json(c: &CircleComplex) -> String {
    pretty(&MeshDto {
        dim: 1,
        vertices: c.vertex_count(),
        faces: None,
        coords: None,
    })
}

pub fn parse_mesh(s: &str) -> Result<Mesh, IoError> {
    let dto: MeshDto = serde_json::from_str(s)?;
    match dto.dim {
        1 => {
            if dto.vertices == 0 {
                return Err(IoError::Schema("a circle needs at least one vertex".into()));
            }
            Ok(Mesh::Circle(CircleComplex::new(dto.vertices)))
        }
        2 => {
            let faces = dto
                .faces
                .ok_or_else(|| IoError::Schema("dim-2 mesh requires \"faces\"".into()))?;
            let mut seen = std::collections::HashSet::new();
            for f in &faces {
                let mut k = *f;
                k.sort_unstable();
                if !seen.insert(k) {
                    return Err(IoError::Schema(format!("duplicate face {:?}", f)));
                }
            }
            let mut c = SurfaceComplex::from_faces(dto.vertices, faces)?;
            if let Some(coords) = dto.coords {
                if coords.len() != dto.vertices {
                    return Err(IoError::Schema("coords length must match vertices".into()));
                }
                c = c.with_coords(coords);
            }
            Ok(Mesh::Surface(Arc::new(c)))
        }
        d => Err(IoError::Schema(format!("unsupported dim {}", d))),
    }
}

// ---------------------------------------------------------------------------
// Bundle
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct TransitionDto {
    from_face: usize,
    to_face: usize,
    turn: String,
    reflect: bool,
    /// Lifted turn of the reverse record when it is not the exact inverse of
    /// the forward one (their mod-1 classes always compose to the identity,
    /// but the integer parts of the lifts are independent data).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    reverse_turn: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct BundleDto {
    transitions: Vec<TransitionDto>,
}

#[derive(Serialize, Deserialize)]
struct SignDto {
    vertex: usize,
    sign: i8,
}

#[derive(Serialize, Deserialize)]
struct LineDto {
    signs: Vec<SignDto>,
}

pub fn bundle_to_json(b: &BundleCocycle) -> String {
    let base = b.base();
    let mut records = Vec::new();
    for h in 0..base.halfedge_count() {
        let t = base.twin(h);
        if h > t {
            continue;
        }
        let fwd = b.transition(h);
        let bwd = b.transition(t);
        let derived = fwd.inverse();
        records.push(TransitionDto {
            from_face: base.halfedge_face(h),
            to_face: base.halfedge_face(t),
            turn: fwd.turn.to_string(),
            reflect: fwd.reflect,
            reverse_turn: if *bwd == derived {
                None
            } else {
                Some(bwd.turn.to_string())
            },
        });
    }
    pretty(&BundleDto { transitions: records })
}

pub fn parse_bundle(s: &str, base: &Arc<SurfaceComplex>) -> Result<BundleCocycle, IoError> {
    let dto: BundleDto = serde_json::from_str(s)?;
    // Halfedges from face a to face b, ascending, so repeated records for a
    // doubled adjacency apply to its edges in a stable order.
    let mut by_pair: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for h in 0..base.halfedge_count() {
        let t = base.twin(h);
        if h > t {
            continue;
        }
        by_pair
            .entry((base.halfedge_face(h), base.halfedge_face(t)))
            .or_default()
            .push(h);
    }
    let mut used: HashMap<(usize, usize), usize> = HashMap::new();
    let mut transitions: Vec<Option<Transition>> = vec![None; base.halfedge_count()];
    for rec in &dto.transitions {
        let (key, reversed) = if by_pair.contains_key(&(rec.from_face, rec.to_face)) {
            ((rec.from_face, rec.to_face), false)
        } else if by_pair.contains_key(&(rec.to_face, rec.from_face)) {
            ((rec.to_face, rec.from_face), true)
        } else {
            return Err(IoError::Schema(format!(
                "faces {} and {} are not adjacent",
                rec.from_face, rec.to_face
            )));
        };
        let slot = used.entry(key).or_insert(0);
        let edges = &by_pair[&key];
        if *slot >= edges.len() {
            return Err(IoError::Schema(format!(
                "too many transition records for faces {} and {}",
                rec.from_face, rec.to_face
            )));
        }
        let h = edges[*slot];
        *slot += 1;
        let t = base.twin(h);
        let fwd = Transition {
            reflect: rec.reflect,
            turn: Turn::parse(&rec.turn)?,
        };
        let bwd = match &rec.reverse_turn {
            Some(s) => Transition {
                reflect: rec.reflect,
                turn: Turn::parse(s)?,
            },
            None => fwd.inverse(),
        };
        // A record may name the pair in either face order; `h` runs from
        // key.0 to key.1.
        let (a, b) = if reversed { (bwd, fwd) } else { (fwd, bwd) };
        transitions[h] = Some(a);
        transitions[t] = Some(b);
    }
    let transitions: Vec<Transition> = transitions
        .into_iter()
        .enumerate()
        .map(|(h, t)| {
            t.ok_or_else(|| {
                IoError::Schema(format!(
                    "missing transition record for edge {}",
                    base.edge_id(h)
                ))
            })
        })
        .collect::<Result<_, _>>()?;
    Ok(BundleCocycle::new(Arc::clone(base), transitions)?)
}

pub fn line_to_json(l: &LineCocycle) -> String {
    let signs = l
        .signs()
        .iter()
        .enumerate()
        .filter(|(_, &s)| s == -1)
        .map(|(v, &s)| SignDto { vertex: v, sign: s })
        .collect();
    pretty(&LineDto { signs })
}

pub fn parse_line(s: &str, base: CircleComplex) -> Result<LineCocycle, IoError> {
    let dto: LineDto = serde_json::from_str(s)?;
    let mut signs = vec![1i8; base.vertex_count()];
    for rec in &dto.signs {
        if rec.vertex >= signs.len() {
            return Err(IoError::Schema(format!("vertex {} out of range", rec.vertex)));
        }
        if rec.sign != 1 && rec.sign != -1 {
            return Err(IoError::Schema(format!("sign must be ±1, got {}", rec.sign)));
        }
        signs[rec.vertex] = rec.sign;
    }
    Ok(LineCocycle::new(base, signs))
}

// ---------------------------------------------------------------------------
// Field
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct ValueDto {
    angle: String,
    mag: String,
}

#[derive(Serialize, Deserialize)]
struct MatchingDto {
    from_face: usize,
    to_face: usize,
    perm: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct CircleMatchingDto {
    vertex: usize,
    perm: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct FieldDto {
    n: usize,
    rank: u8,
    values: BTreeMap<String, serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matchings: Option<Vec<MatchingDto>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    circle_matchings: Option<Vec<CircleMatchingDto>>,
    policy: String,
}

fn policy_name(p: MatchingPolicy) -> &'static str {
    match p {
        MatchingPolicy::Explicit => "explicit",
        MatchingPolicy::NearestAngle => "nearest",
        MatchingPolicy::ByMagnitude => "magnitude",
    }
}

fn policy_from_name(s: &str) -> Result<MatchingPolicy, IoError> {
    match s {
        "explicit" => Ok(MatchingPolicy::Explicit),
        "nearest" => Ok(MatchingPolicy::NearestAngle),
        "magnitude" => Ok(MatchingPolicy::ByMagnitude),
        other => Err(IoError::Schema(format!("unknown policy {:?}", other))),
    }
}

pub fn field_to_json(f: &NField) -> String {
    let base = f.bundle().base();
    let mut values = BTreeMap::new();
    for (face, vs) in f.all_values().iter().enumerate() {
        let dtos: Vec<ValueDto> = vs
            .iter()
            .map(|v| ValueDto {
                angle: v.angle.to_string(),
                mag: show_rational(&v.mag),
            })
            .collect();
        values.insert(
            face.to_string(),
            serde_json::to_value(dtos).expect("value serialization is infallible"),
        );
    }
    // Matchings are always persisted (one record per edge) so any field,
    // including policy-derived ones, reloads without re-derivation.
    let mut matchings = Vec::new();
    for h in 0..base.halfedge_count() {
        let t = base.twin(h);
        if h > t {
            continue;
        }
        matchings.push(MatchingDto {
            from_face: base.halfedge_face(h),
            to_face: base.halfedge_face(t),
            perm: f.matching(h).to_vec(),
        });
    }
    pretty(&FieldDto {
        n: f.n(),
        rank: 2,
        values,
        matchings: Some(matchings),
        circle_matchings: None,
        policy: policy_name(f.policy()).to_string(),
    })
}

pub fn parse_field(s: &str, bundle: BundleCocycle) -> Result<NField, IoError> {
    let dto: FieldDto = serde_json::from_str(s)?;
    if dto.rank != 2 {
        return Err(IoError::Schema(format!("expected rank 2, got {}", dto.rank)));
    }
    let base = Arc::clone(bundle.base());
    let mut values: Vec<Vec<Value>> = vec![Vec::new(); base.face_count()];
    for (key, raw) in &dto.values {
        let face: usize = key
            .parse()
            .map_err(|_| IoError::Schema(format!("bad face key {:?}", key)))?;
        if face >= values.len() {
            return Err(IoError::Schema(format!("face {} out of range", face)));
        }
        let dtos: Vec<ValueDto> = serde_json::from_value(raw.clone())?;
        values[face] = dtos
            .iter()
            .map(|v| {
                Ok(Value::new(
                    TurnClass::parse(&v.angle)?,
                    parse_rational(&v.mag)?,
                ))
            })
            .collect::<Result<_, IoError>>()?;
    }
    if values.iter().any(|v| v.len() != dto.n) {
        return Err(IoError::Schema(
            "every face needs exactly n values".into(),
        ));
    }
    let policy = policy_from_name(&dto.policy)?;
    match &dto.matchings {
        Some(records) => {
            let records: Vec<ExplicitMatching> = records
                .iter()
                .map(|m| ExplicitMatching {
                    from_face: m.from_face,
                    to_face: m.to_face,
                    perm: m.perm.clone(),
                })
                .collect();
            Ok(NField::build_explicit(bundle, values, &records)?.with_policy(policy))
        }
        None => {
            if policy == MatchingPolicy::Explicit {
                return Err(IoError::Schema(
                    "policy \"explicit\" requires matchings".into(),
                ));
            }
            Ok(NField::build(bundle, values, policy)?)
        }
    }
}

pub fn circle_field_to_json(f: &CircleNField) -> String {
    let mut values = BTreeMap::new();
    for (edge, vs) in f.all_values().iter().enumerate() {
        let strs: Vec<String> = vs.iter().map(show_rational).collect();
        values.insert(
            edge.to_string(),
            serde_json::to_value(strs).expect("value serialization is infallible"),
        );
    }
    let circle_matchings = (0..f.line().base().vertex_count())
        .map(|v| CircleMatchingDto {
            vertex: v,
            perm: f.matching(v).to_vec(),
        })
        .collect();
    pretty(&FieldDto {
        n: f.n(),
        rank: 1,
        values,
        matchings: None,
        circle_matchings: Some(circle_matchings),
        policy: "explicit".to_string(),
    })
}

pub fn parse_circle_field(s: &str, line: LineCocycle) -> Result<CircleNField, IoError> {
    let dto: FieldDto = serde_json::from_str(s)?;
    if dto.rank != 1 {
        return Err(IoError::Schema(format!("expected rank 1, got {}", dto.rank)));
    }
    let edge_count = line.base().edge_count();
    let vertex_count = line.base().vertex_count();
    let mut values: Vec<Vec<BigRational>> = vec![Vec::new(); edge_count];
    for (key, raw) in &dto.values {
        let edge: usize = key
            .parse()
            .map_err(|_| IoError::Schema(format!("bad edge key {:?}", key)))?;
        if edge >= edge_count {
            return Err(IoError::Schema(format!("edge {} out of range", edge)));
        }
        let strs: Vec<String> = serde_json::from_value(raw.clone())?;
        values[edge] = strs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<_, IoError>>()?;
    }
    if values.iter().any(|v| v.len() != dto.n) {
        return Err(IoError::Schema("every edge needs exactly n values".into()));
    }
    match &dto.circle_matchings {
        Some(records) => {
            let mut matchings = vec![Vec::new(); vertex_count];
            for r in records {
                if r.vertex >= vertex_count {
                    return Err(IoError::Schema(format!(
                        "vertex {} out of range",
                        r.vertex
                    )));
                }
                matchings[r.vertex] = r.perm.clone();
            }
            if matchings.iter().any(|m| m.is_empty() && dto.n > 0) {
                return Err(IoError::Schema("missing matching for some vertex".into()));
            }
            Ok(CircleNField::build_explicit(line, values, matchings)?)
        }
        None => Ok(CircleNField::build(line, values)?),
    }
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct VertexReportDto {
    v: usize,
    cycles: Vec<usize>,
    index: i64,
    regular: bool,
}

#[derive(Serialize, Deserialize)]
struct ReportDto {
    mode: String,
    n: usize,
    vertices: Vec<VertexReportDto>,
    sum: i64,
    expected: i64,
    pass: bool,
}

fn small(i: &BigInt) -> i64 {
    i.to_i64().expect("index fits in i64")
}

pub fn verdict_to_json(v: &VerificationVerdict) -> String {
    pretty(&ReportDto {
        mode: match v.mode {
            Mode::Integer => "integer".to_string(),
            Mode::Mod2 => "mod2".to_string(),
        },
        n: v.n,
        vertices: v
            .vertices
            .iter()
            .map(|r| VertexReportDto {
                v: r.vertex,
                cycles: r.cycles.clone(),
                index: small(&r.index),
                regular: r.regular,
            })
            .collect(),
        sum: small(&v.lhs),
        expected: small(&v.rhs),
        pass: v.pass,
    })
}

// ---------------------------------------------------------------------------
// Resolution
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct ProjectionDto {
    tilde_face: usize,
    base_face: usize,
    sheet: usize,
}

#[derive(Serialize, Deserialize)]
struct ConeVertexDto {
    tilde_vertex: usize,
    base_vertex: usize,
    cycle_length: usize,
}

#[derive(Serialize, Deserialize)]
struct ResolutionDto {
    mesh: serde_json::Value,
    projection: Vec<ProjectionDto>,
    cone_vertices: Vec<ConeVertexDto>,
}

pub fn resolution_to_json(r: &BranchedResolution) -> String {
    let mesh: serde_json::Value =
        serde_json::from_str(&surface_to_json(&r.tilde)).expect("mesh json is valid");
    pretty(&ResolutionDto {
        mesh,
        projection: r
            .projection
            .iter()
            .enumerate()
            .map(|(tf, &(bf, sheet))| ProjectionDto {
                tilde_face: tf,
                base_face: bf,
                sheet,
            })
            .collect(),
        cone_vertices: r
            .cone_vertices
            .iter()
            .map(|c| ConeVertexDto {
                tilde_vertex: c.tilde_vertex,
                base_vertex: c.base_vertex,
                cycle_length: c.cycle_length,
            })
            .collect(),
    })
}

// ---------------------------------------------------------------------------
// Degree
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct CircleComponentDto {
    r: usize,
    #[serde(rename = "loop")]
    samples: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct LensDto {
    n: usize,
    d: i64,
}

#[derive(Serialize, Deserialize)]
struct DegreeInputDto {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    components: Option<Vec<CircleComponentDto>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lens: Option<LensDto>,
}

#[derive(Serialize, Deserialize)]
struct DegreeOutputDto {
    degree: i64,
    components: usize,
    lefschetz: i64,
}

pub fn parse_degree_input(s: &str) -> Result<StructuredCircleMap, IoError> {
    let dto: DegreeInputDto = serde_json::from_str(s)?;
    match (dto.components, dto.lens) {
        (Some(comps), None) => {
            let mut components = Vec::with_capacity(comps.len());
            for c in &comps {
                let samples: Vec<TurnClass> = c
                    .samples
                    .iter()
                    .map(|s| TurnClass::parse(s))
                    .collect::<Result<_, _>>()?;
                if samples.is_empty() {
                    return Err(IoError::Schema("component loop must be non-empty".into()));
                }
                components.push((c.r, SampledLoop::new(samples)?));
            }
            Ok(StructuredCircleMap::new(components)?)
        }
        (None, Some(lens)) => {
            if lens.n == 0 {
                return Err(IoError::Schema("lens n must be positive".into()));
            }
            Ok(crate::gen::lens_circle(lens.n, lens.d))
        }
        _ => Err(IoError::Schema(
            "degree input needs exactly one of \"components\" or \"lens\"".into(),
        )),
    }
}

pub fn degree_input_to_json(m: &StructuredCircleMap) -> String {
    let components = m
        .components()
        .iter()
        .map(|(r, lp)| CircleComponentDto {
            r: *r,
            samples: lp.samples().iter().map(|s| s.to_string()).collect(),
        })
        .collect();
    pretty(&DegreeInputDto {
        components: Some(components),
        lens: None,
    })
}

pub fn degree_report(m: &StructuredCircleMap) -> Result<String, IoError> {
    let deg = degree_circle(m)?;
    let deg_i = deg.to_i64().expect("degree fits in i64");
    Ok(pretty(&DegreeOutputDto {
        degree: deg_i,
        components: m.components().len(),
        lefschetz: lefschetz(deg_i, m.n() as u64, 2),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::tangent_like;
    use crate::complex::{octahedron, torus_grid};
    use crate::gen;
    use crate::index::verify_theorem;

    #[test]
    fn mesh_round_trip() {
        let c = octahedron();
        let json = surface_to_json(&c);
        match parse_mesh(&json).unwrap() {
            Mesh::Surface(c2) => {
                assert_eq!(c2.faces(), c.faces());
                assert_eq!(c2.vertex_count(), c.vertex_count());
                assert_eq!(c2.coords(), c.coords());
            }
            _ => panic!("expected a surface"),
        }
        let circ = CircleComplex::new(5);
        match parse_mesh(&circle_to_json(&circ)).unwrap() {
            Mesh::Circle(c2) => assert_eq!(c2.vertex_count(), 5),
            _ => panic!("expected a circle"),
        }
    }

    #[test]
    fn mesh_rejects_duplicates_and_bad_dim() {
        let json = r#"{"dim": 2, "vertices": 4, "faces": [[0,1,2],[2,1,0]]}"#;
        assert!(matches!(parse_mesh(json), Err(IoError::Schema(_))));
        let json = r#"{"dim": 3, "vertices": 4}"#;
        assert!(matches!(parse_mesh(json), Err(IoError::Schema(_))));
    }

    #[test]
    fn bundle_round_trip_with_asymmetric_lifts() {
        let base = Arc::new(octahedron());
        for b in [
            tangent_like(&base),
            BundleCocycle::trivial(Arc::clone(&base)),
            gen::sphere_line_field().bundle().clone(),
        ] {
            let json = bundle_to_json(&b);
            let b2 = parse_bundle(&json, &base).unwrap();
            assert_eq!(b2.transitions(), b.transitions());
        }
    }

    #[test]
    fn field_round_trip_all_policies() {
        let base = Arc::new(octahedron());
        let torus = Arc::new(torus_grid(4));
        let fields = vec![
            gen::tangent_like_field(&base),
            gen::quotient_field(&base, 4).unwrap(),
            gen::scaled_sections_field(&torus, 3, 2, 5).unwrap(),
            gen::sphere_line_field(),
            gen::random_nfield(&torus, 3, 7),
        ];
        for f in fields {
            let json = field_to_json(&f);
            let f2 = parse_field(&json, f.bundle().clone()).unwrap();
            assert_eq!(f2.n(), f.n());
            assert_eq!(f2.all_values(), f.all_values());
            assert_eq!(f2.matchings(), f.matchings());
            assert_eq!(f2.policy(), f.policy());
        }
    }

    #[test]
    fn circle_field_round_trip() {
        let line = LineCocycle::moebius(CircleComplex::new(5));
        let values: Vec<Vec<BigRational>> = (0..5)
            .map(|e| {
                vec![
                    BigRational::from_integer(BigInt::from(e as i64 + 1)),
                    BigRational::from_integer(BigInt::from(-(e as i64 + 2))),
                ]
            })
            .collect();
        let matchings = vec![vec![0, 1]; 5];
        let f = CircleNField::build_explicit(line.clone(), values, matchings).unwrap();
        let json = circle_field_to_json(&f);
        let f2 = parse_circle_field(&json, line).unwrap();
        assert_eq!(f2.all_values(), f.all_values());
        assert_eq!(f2.n(), f.n());
    }

    #[test]
    fn line_round_trip() {
        let l = LineCocycle::moebius(CircleComplex::new(6));
        let json = line_to_json(&l);
        let l2 = parse_line(&json, CircleComplex::new(6)).unwrap();
        assert_eq!(l2.signs(), l.signs());
    }

    #[test]
    fn verdict_serializes() {
        let base = Arc::new(octahedron());
        let f = gen::tangent_like_field(&base);
        let v = verify_theorem(&f, Mode::Integer).unwrap();
        let json = verdict_to_json(&v);
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed["sum"], 2);
        assert_eq!(parsed["pass"], true);
        assert_eq!(parsed["mode"], "integer");
    }

    #[test]
    fn degree_input_forms() {
        let lens = r#"{"lens": {"n": 2, "d": 3}}"#;
        let m = parse_degree_input(lens).unwrap();
        let report = degree_report(&m).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&report).unwrap();
        assert_eq!(parsed["degree"], 3);
        assert_eq!(parsed["components"], 1);
        assert_eq!(parsed["lefschetz"], -1);

        let json = degree_input_to_json(&m);
        let m2 = parse_degree_input(&json).unwrap();
        assert_eq!(m2, m);

        assert!(parse_degree_input("{}").is_err());
        let both = r#"{"lens": {"n": 2, "d": 3}, "components": []}"#;
        assert!(parse_degree_input(both).is_err());
    }
}
