//! Local indices of n-valued fields and the index-sum theorem.
//!
//! The local index at a vertex v is the degree of the n-valued section
//! restricted to the link of v, measured in a trivialization of the bundle
//! over the star of v. Concretely: for each monodromy cycle of length r, the
//! active sheet is carried r times around the link through the matchings
//! while the inverse of the accumulated frame transport pulls every sampled
//! direction back to the reference frame; the cycle contributes r·H(v) (the
//! holonomy the trivialization must absorb) plus the winding of the pulled-
//! back samples. The index is the sum over cycles.
//!
//! The index-sum theorem — Σ_v index(v) = n·e(ξ) in the oriented integer
//! case, and ≡ n·w(ξ) mod 2 in general — holds exactly for every valid field
//! and is checked by [`verify_theorem`].

use num::bigint::BigInt;
use num::{Signed, Zero};
use thiserror::Error;

use crate::bundle::{BundleCocycle, SingleField, Transition};
use crate::complex::{Orientation, VertexLink};
use crate::cover::{monodromy_on_link, Monodromy};
use crate::field::{CircleNField, NField};
use crate::turn::{shortest_lift, Turn, TurnError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error("field varies by a half turn or more across one link step at vertex {0}; refine the mesh or the field")]
    InsufficientResolution(usize),
    #[error("integer mode needs an oriented base and a reflection-free cocycle")]
    ModeUnavailable,
    #[error("sigma-minus is defined for 2-valued fields only")]
    NotTwoValued,
    #[error("could not evaluate the bundle's mod-2 invariant: {0}")]
    Bundle(#[from] crate::bundle::BundleError),
}

/// Which index-sum identity is being computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Integer indices; Σ = n·e(ξ). Oriented, reflection-free data only.
    Integer,
    /// Indices mod 2; Σ ≡ n·w(ξ). Always available.
    Mod2,
}

/// The local index of an n-valued field at one vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalIndexReport {
    pub vertex: usize,
    pub mode: Mode,
    /// Monodromy cycle lengths {r_i}, ordered by smallest cycle element.
    pub cycles: Vec<usize>,
    /// Per-cycle winding contributions (integer mode values; in mod-2 mode
    /// these are the integers computed along the deterministic direction,
    /// meaningful only mod 2).
    pub contributions: Vec<BigInt>,
    /// The index: an integer in integer mode, a bit (0/1) in mod-2 mode.
    pub index: BigInt,
    /// Index zero and trivial monodromy.
    pub regular: bool,
}

/// The outcome of checking the index-sum identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationVerdict {
    pub mode: Mode,
    pub n: usize,
    pub vertices: Vec<LocalIndexReport>,
    /// Σ of local indices (mod 2 in mod-2 mode).
    pub lhs: BigInt,
    /// n·e(ξ) or n·w(ξ) mod 2.
    pub rhs: BigInt,
    pub pass: bool,
}

/// Carry the sheet at `start` around the link `r` times; returns the total of
/// the shortest lifts between consecutive pulled-back samples.
fn trace_cycle(
    f: &NField,
    link: &VertexLink,
    start: usize,
    r: usize,
) -> Result<Turn, TurnError> {
    let base = f.bundle().base();
    let ref_face = link.steps[0].face;
    let mut sheet = start;
    let mut transport = Transition::identity();
    let mut prev = f.values(ref_face)[sheet].angle.clone();
    let mut total = Turn::zero();
    for _ in 0..r {
        for step in &link.steps {
            let h = step.crossing;
            sheet = f.matching(h)[sheet];
            transport = f
                .bundle()
                .crossing_transition(link.vertex, h)
                .compose_after(&transport);
            let next_face = base.halfedge_face(base.twin(h));
            let sample = transport.inverse().apply(&f.values(next_face)[sheet].angle);
            total += shortest_lift(&prev, &sample)?;
            prev = sample;
        }
    }
    // closure: the cycle returns to its sheet and the accumulated transport
    // is the integer rotation r·H(v), so the samples telescope to an integer
    assert_eq!(sheet, start, "monodromy cycle must close");
    assert!(
        !transport.reflect && transport.turn.is_integer(),
        "link transport must close to an integer rotation"
    );
    assert!(total.is_integer(), "windings telescope to integers");
    Ok(total)
}

fn index_on_link(f: &NField, link: &VertexLink, mode: Mode) -> Result<LocalIndexReport, IndexError> {
    let mono: Monodromy = monodromy_on_link(f, link);
    let holonomy = f
        .bundle()
        .holonomy(link)
        .expect("validated cocycles have integer link holonomy");
    let mut contributions = Vec::with_capacity(mono.cycles.len());
    let mut total = BigInt::zero();
    for cycle in &mono.cycles {
        let r = cycle.len();
        let m_total = trace_cycle(f, link, cycle[0], r)
            .map_err(|_| IndexError::InsufficientResolution(link.vertex))?;
        let w = BigInt::from(r as i64) * &holonomy + m_total.to_integer().unwrap();
        total += &w;
        contributions.push(w);
    }
    let index = match mode {
        Mode::Integer => total,
        Mode::Mod2 => (total % 2 + 2) % 2,
    };
    Ok(LocalIndexReport {
        vertex: link.vertex,
        mode,
        cycles: mono.cycle_lengths(),
        regular: index.is_zero() && mono.is_trivial(),
        contributions,
        index,
    })
}

/// The local index at `v` in the given mode. Integer mode uses the canonical
/// orientation of the base; mod-2 mode the deterministic link direction.
pub fn local_index(f: &NField, v: usize, mode: Mode) -> Result<LocalIndexReport, IndexError> {
    let base = f.bundle().base();
    match mode {
        Mode::Integer => {
            let ori = base.orient();
            if !ori.is_orientable() || f.bundle().has_reflections() {
                return Err(IndexError::ModeUnavailable);
            }
            index_on_link(f, &base.vertex_link_oriented(v, &ori), mode)
        }
        Mode::Mod2 => index_on_link(f, &base.vertex_link_deterministic(v), mode),
    }
}

/// Integer local index measured in an explicitly chosen orientation.
pub fn local_index_oriented(
    f: &NField,
    v: usize,
    ori: &Orientation,
) -> Result<LocalIndexReport, IndexError> {
    if !ori.is_orientable() || f.bundle().has_reflections() {
        return Err(IndexError::ModeUnavailable);
    }
    let base = f.bundle().base();
    index_on_link(f, &base.vertex_link_oriented(v, ori), Mode::Integer)
}

/// Integer local index along an arbitrary link traversal (used to check
/// reference independence).
pub fn local_index_on_link(
    f: &NField,
    link: &VertexLink,
    mode: Mode,
) -> Result<LocalIndexReport, IndexError> {
    index_on_link(f, link, mode)
}

/// Check the index-sum identity: Σ_v index = n·e(ξ) (integer mode) or
/// Σ_v index ≡ n·w(ξ) (mod-2 mode).
pub fn verify_theorem(f: &NField, mode: Mode) -> Result<VerificationVerdict, IndexError> {
    let base = f.bundle().base();
    let n = f.n();
    let mut vertices = Vec::with_capacity(base.vertex_count());
    let mut lhs = BigInt::zero();
    for v in 0..base.vertex_count() {
        let rep = local_index(f, v, mode)?;
        lhs += &rep.index;
        vertices.push(rep);
    }
    let rhs = match mode {
        Mode::Integer => {
            let e = f.bundle().euler_number().map_err(|_| IndexError::ModeUnavailable)?;
            BigInt::from(n as i64) * e
        }
        Mode::Mod2 => {
            lhs = (lhs % 2 + 2) % 2;
            let w = f.bundle().sw_top(0)?;
            BigInt::from((n as u64 * w as u64) % 2)
        }
    };
    let pass = lhs == rhs;
    Ok(VerificationVerdict {
        mode,
        n,
        vertices,
        lhs,
        rhs,
        pass,
    })
}

/// Σ₋: the vertices of a 2-valued field whose monodromy is the transposition
/// (the pulled-back double cover does not extend over them), and the parity
/// of their count — always even for valid fields.
pub fn sigma_minus(f: &NField) -> Result<(Vec<usize>, u8), IndexError> {
    if f.n() != 2 {
        return Err(IndexError::NotTwoValued);
    }
    let base = f.bundle().base();
    let mut set = Vec::new();
    for v in 0..base.vertex_count() {
        let mono = crate::cover::monodromy(f, v);
        if !mono.is_trivial() {
            set.push(v);
        }
    }
    let parity = (set.len() % 2) as u8;
    Ok((set, parity))
}

/// The local index of a rank-1 n-valued field at a circle vertex: the number
/// of coincidences with the tautological cover minus n. A value on the
/// positive side coincides when it points positively; a value on the negative
/// side coincides when its transport through the vertex points negatively.
pub fn circle_index(f: &CircleNField, v: usize) -> BigInt {
    let line = f.line();
    let before = f.values(line.base().edge_before(v));
    let after = f.values(line.base().edge_after(v));
    let s = line.sign(v) as i64;
    let mut coincidences = 0i64;
    for val in before {
        if (val * BigInt::from(s)).is_negative() {
            coincidences += 1;
        }
    }
    for val in after {
        if val.is_positive() {
            coincidences += 1;
        }
    }
    BigInt::from(coincidences - f.n() as i64)
}

/// Check the rank-1 index-sum identity over a circle. Integer mode demands a
/// trivial (all-signs-positive) cocycle and expects Σ = 0; mod-2 mode expects
/// Σ ≡ n·w₁.
pub fn verify_circle(f: &CircleNField, mode: Mode) -> Result<VerificationVerdict, IndexError> {
    let line = f.line();
    if mode == Mode::Integer && line.signs().iter().any(|&s| s != 1) {
        return Err(IndexError::ModeUnavailable);
    }
    let n = f.n();
    let mut vertices = Vec::with_capacity(line.base().vertex_count());
    let mut lhs = BigInt::zero();
    for v in 0..line.base().vertex_count() {
        let index = circle_index(f, v);
        lhs += &index;
        vertices.push(LocalIndexReport {
            vertex: v,
            mode,
            cycles: Vec::new(),
            contributions: Vec::new(),
            regular: index.is_zero(),
            index: match mode {
                Mode::Integer => index,
                Mode::Mod2 => (index % 2 + 2) % 2,
            },
        });
    }
    let rhs = match mode {
        Mode::Integer => BigInt::zero(),
        Mode::Mod2 => {
            lhs = (lhs % 2 + 2) % 2;
            BigInt::from((n as u64 * line.line_w1() as u64) % 2)
        }
    };
    let pass = lhs == rhs;
    Ok(VerificationVerdict {
        mode,
        n,
        vertices,
        lhs,
        rhs,
        pass,
    })
}

/// The parity of the total mod-2 index of a single-valued section; the
/// engine behind [`BundleCocycle::sw_top`]. Errors on half-turn steps so the
/// caller can resample.
pub(crate) fn single_field_parity(
    bundle: &BundleCocycle,
    field: &SingleField,
) -> Result<u8, TurnError> {
    let base = bundle.base();
    let mut total = BigInt::zero();
    for v in 0..base.vertex_count() {
        let link = base.vertex_link_deterministic(v);
        let holonomy = bundle
            .holonomy(&link)
            .expect("validated cocycles have integer link holonomy");
        let mut transport = Transition::identity();
        let mut prev = field.angles[link.steps[0].face].clone();
        let mut m_total = Turn::zero();
        for step in &link.steps {
            transport = bundle
                .crossing_transition(v, step.crossing)
                .compose_after(&transport);
            let g = base.halfedge_face(base.twin(step.crossing));
            let sample = transport.inverse().apply(&field.angles[g]);
            m_total += shortest_lift(&prev, &sample)?;
            prev = sample;
        }
        total += holonomy + m_total.to_integer().expect("windings telescope to integers");
    }
    let bit: BigInt = ((total % 2) + 2) % 2;
    Ok(if bit.is_zero() { 0 } else { 1 })
}
