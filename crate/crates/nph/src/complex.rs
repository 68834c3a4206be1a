//! Closed combinatorial manifolds of dimension 1 and 2.
//!
//! A [`SurfaceComplex`] is a closed, connected triangulated surface with
//! halfedge connectivity. Faces are ordered vertex triples; the gluing is
//! either inferred from shared vertex pairs ([`SurfaceComplex::from_faces`])
//! or supplied explicitly as a twin pairing ([`SurfaceComplex::from_gluing`]),
//! which admits the delta-complexes produced by branched resolution where two
//! faces may share more than one edge.
//!
//! Complexes are purely combinatorial; vertex coordinates are optional
//! metadata consumed only by the SVG emitter.

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("edge {{{0}, {1}}} lies in {2} faces, expected 2")]
    NonManifoldEdge(usize, usize, usize),
    #[error("complex is not connected")]
    Disconnected,
    #[error("link of vertex {0} is not a single cycle")]
    PinchedVertex(usize),
    #[error("duplicate face {0:?}")]
    DuplicateFace([usize; 3]),
    #[error("face {0:?} has a repeated vertex")]
    DegenerateFace([usize; 3]),
    #[error("vertex id {0} out of range (vertex_count {1})")]
    BadVertexId(usize, usize),
    #[error("complex has no faces")]
    Empty,
    #[error("vertex {0} is not incident to any face")]
    IsolatedVertex(usize),
    #[error("invalid twin pairing for halfedge {0}")]
    BadGluing(usize),
}

/// Identifies a directed edge: halfedge `f * 3 + s` runs inside face `f` from
/// corner `s` to corner `(s + 1) % 3`.
pub type HalfedgeId = usize;

#[derive(Debug, Clone)]
pub struct SurfaceComplex {
    vertex_count: usize,
    faces: Vec<[usize; 3]>,
    /// twin[h] is the opposite halfedge of h.
    twins: Vec<HalfedgeId>,
    /// edge id per halfedge; each undirected edge has one id shared by its two
    /// halfedges.
    edge_of: Vec<usize>,
    edge_count: usize,
    coords: Option<Vec<[f64; 3]>>,
}

/// One step of a vertex link: the fan face, the corner of the link's vertex
/// within it, and the halfedge crossed to reach the next fan face.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinkStep {
    pub face: usize,
    pub corner: usize,
    pub crossing: HalfedgeId,
}

/// The cyclic fan of faces around a vertex.
#[derive(Debug, Clone)]
pub struct VertexLink {
    pub vertex: usize,
    pub steps: Vec<LinkStep>,
}

impl VertexLink {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// A consistent global orientation: per-face flip relative to the stored
/// vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Orientation {
    Oriented { flips: Vec<bool> },
    Nonorientable,
}

impl Orientation {
    pub fn is_orientable(&self) -> bool {
        matches!(self, Orientation::Oriented { .. })
    }

    pub fn flips(&self) -> Option<&[bool]> {
        match self {
            Orientation::Oriented { flips } => Some(flips),
            Orientation::Nonorientable => None,
        }
    }

    /// The opposite global orientation.
    pub fn reversed(&self) -> Orientation {
        match self {
            Orientation::Oriented { flips } => Orientation::Oriented {
                flips: flips.iter().map(|f| !f).collect(),
            },
            Orientation::Nonorientable => Orientation::Nonorientable,
        }
    }
}

impl SurfaceComplex {
    /// Build and validate a complex from a raw face list, inferring the edge
    /// gluing from shared vertex pairs.
    pub fn from_faces(
        vertex_count: usize,
        faces: Vec<[usize; 3]>,
    ) -> Result<SurfaceComplex, ComplexError> {
        if faces.is_empty() {
            return Err(ComplexError::Empty);
        }
        let mut seen: BTreeMap<[usize; 3], ()> = BTreeMap::new();
        for f in &faces {
            for &v in f {
                if v >= vertex_count {
                    return Err(ComplexError::BadVertexId(v, vertex_count));
                }
            }
            if f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
                return Err(ComplexError::DegenerateFace(*f));
            }
            let mut key = *f;
            key.sort_unstable();
            if seen.insert(key, ()).is_some() {
                return Err(ComplexError::DuplicateFace(*f));
            }
        }

        // Group halfedges by unordered vertex pair.
        let mut by_pair: BTreeMap<(usize, usize), Vec<HalfedgeId>> = BTreeMap::new();
        for (fi, f) in faces.iter().enumerate() {
            for s in 0..3 {
                let a = f[s];
                let b = f[(s + 1) % 3];
                let key = (a.min(b), a.max(b));
                by_pair.entry(key).or_default().push(fi * 3 + s);
            }
        }
        let mut twins = vec![usize::MAX; faces.len() * 3];
        let mut edge_of = vec![usize::MAX; faces.len() * 3];
        let mut edge_count = 0;
        for ((a, b), hs) in &by_pair {
            if hs.len() != 2 {
                return Err(ComplexError::NonManifoldEdge(*a, *b, hs.len()));
            }
            twins[hs[0]] = hs[1];
            twins[hs[1]] = hs[0];
            edge_of[hs[0]] = edge_count;
            edge_of[hs[1]] = edge_count;
            edge_count += 1;
        }

        let c = SurfaceComplex {
            vertex_count,
            faces,
            twins,
            edge_of,
            edge_count,
            coords: None,
        };
        c.check_links()?;
        c.check_connected()?;
        Ok(c)
    }

    /// Build from faces plus an explicit twin pairing. Faces with identical
    /// vertex sets are permitted; each face must still have three distinct
    /// corners and each twin pair must connect the same vertex pair.
    pub fn from_gluing(
        vertex_count: usize,
        faces: Vec<[usize; 3]>,
        twins: Vec<HalfedgeId>,
    ) -> Result<SurfaceComplex, ComplexError> {
        Self::from_gluing_impl(vertex_count, faces, twins, true)
    }

    /// Like [`SurfaceComplex::from_gluing`] but permits multiple connected
    /// components; branched covers of disjoint-sheet fields are disjoint
    /// unions of closed surfaces.
    pub fn from_gluing_multi(
        vertex_count: usize,
        faces: Vec<[usize; 3]>,
        twins: Vec<HalfedgeId>,
    ) -> Result<SurfaceComplex, ComplexError> {
        Self::from_gluing_impl(vertex_count, faces, twins, false)
    }

    fn from_gluing_impl(
        vertex_count: usize,
        faces: Vec<[usize; 3]>,
        twins: Vec<HalfedgeId>,
        require_connected: bool,
    ) -> Result<SurfaceComplex, ComplexError> {
        if faces.is_empty() {
            return Err(ComplexError::Empty);
        }
        if twins.len() != faces.len() * 3 {
            return Err(ComplexError::BadGluing(twins.len()));
        }
        for f in &faces {
            for &v in f {
                if v >= vertex_count {
                    return Err(ComplexError::BadVertexId(v, vertex_count));
                }
            }
            if f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
                return Err(ComplexError::DegenerateFace(*f));
            }
        }
        let he_verts = |h: HalfedgeId| -> (usize, usize) {
            let f = h / 3;
            let s = h % 3;
            (faces[f][s], faces[f][(s + 1) % 3])
        };
        let mut edge_of = vec![usize::MAX; twins.len()];
        let mut edge_count = 0;
        for h in 0..twins.len() {
            let t = twins[h];
            if t >= twins.len() || t == h || twins[t] != h {
                return Err(ComplexError::BadGluing(h));
            }
            let (a, b) = he_verts(h);
            let (c, d) = he_verts(t);
            if (a.min(b), a.max(b)) != (c.min(d), c.max(d)) {
                return Err(ComplexError::BadGluing(h));
            }
            if edge_of[h] == usize::MAX {
                edge_of[h] = edge_count;
                edge_of[t] = edge_count;
                edge_count += 1;
            }
        }
        let c = SurfaceComplex {
            vertex_count,
            faces,
            twins,
            edge_of,
            edge_count,
            coords: None,
        };
        c.check_links()?;
        if require_connected {
            c.check_connected()?;
        }
        Ok(c)
    }

    /// The number of connected components (1 except for covers built with
    /// [`SurfaceComplex::from_gluing_multi`]).
    pub fn component_count(&self) -> usize {
        let mut comp = vec![usize::MAX; self.faces.len()];
        let mut count = 0;
        for seed in 0..self.faces.len() {
            if comp[seed] != usize::MAX {
                continue;
            }
            let mut queue = VecDeque::from([seed]);
            comp[seed] = count;
            while let Some(f) = queue.pop_front() {
                for s in 0..3 {
                    let g = self.twins[f * 3 + s] / 3;
                    if comp[g] == usize::MAX {
                        comp[g] = count;
                        queue.push_back(g);
                    }
                }
            }
            count += 1;
        }
        count
    }

    pub fn with_coords(mut self, coords: Vec<[f64; 3]>) -> SurfaceComplex {
        assert_eq!(coords.len(), self.vertex_count);
        self.coords = Some(coords);
        self
    }

    pub fn coords(&self) -> Option<&[[f64; 3]]> {
        self.coords.as_deref()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edge_count as i64 + self.faces.len() as i64
    }

    pub fn twin(&self, h: HalfedgeId) -> HalfedgeId {
        self.twins[h]
    }

    pub fn edge_id(&self, h: HalfedgeId) -> usize {
        self.edge_of[h]
    }

    /// The ordered (from, to) vertices of a halfedge.
    pub fn halfedge_vertices(&self, h: HalfedgeId) -> (usize, usize) {
        let f = h / 3;
        let s = h % 3;
        (self.faces[f][s], self.faces[f][(s + 1) % 3])
    }

    pub fn halfedge_face(&self, h: HalfedgeId) -> usize {
        h / 3
    }

    pub fn halfedge_count(&self) -> usize {
        self.twins.len()
    }

    /// True when the two halfedges of each twin pair traverse the shared edge
    /// in the same vertex direction, given the flips (used by `orient`).
    fn gluing_conflicts(&self, flips: &[bool], h: HalfedgeId) -> bool {
        let t = self.twins[h];
        let (a, _) = self.halfedge_vertices(h);
        let (c, _) = self.halfedge_vertices(t);
        // Consistently oriented faces traverse a shared edge oppositely.
        let same_direction = a == c;
        (flips[h / 3] == flips[t / 3]) == same_direction
    }

    /// The deterministic breadth-first attempt at consistent face flips:
    /// face 0 keeps its stored order and the rest follow by propagation.
    /// Defined for every complex; on non-orientable complexes the conflicted
    /// gluings are exactly the orientation-reversing seam.
    pub fn bfs_flips(&self) -> Vec<bool> {
        let mut flips = vec![false; self.faces.len()];
        let mut visited = vec![false; self.faces.len()];
        let mut queue = VecDeque::new();
        for seed in 0..self.faces.len() {
            if visited[seed] {
                continue;
            }
            visited[seed] = true;
            queue.push_back(seed);
            self.bfs_flips_component(&mut flips, &mut visited, &mut queue);
        }
        flips
    }

    fn bfs_flips_component(
        &self,
        flips: &mut [bool],
        visited: &mut [bool],
        queue: &mut VecDeque<usize>,
    ) {
        while let Some(f) = queue.pop_front() {
            for s in 0..3 {
                let h = f * 3 + s;
                let t = self.twins[h];
                let g = t / 3;
                if visited[g] {
                    continue;
                }
                let (a, _) = self.halfedge_vertices(h);
                let (c, _) = self.halfedge_vertices(t);
                let same_direction = a == c;
                visited[g] = true;
                flips[g] = if same_direction { !flips[f] } else { flips[f] };
                queue.push_back(g);
            }
        }
    }

    /// A global orientation when one exists. Deterministic: face 0 keeps its
    /// stored order and the rest follow by breadth-first propagation.
    pub fn orient(&self) -> Orientation {
        let flips = self.bfs_flips();
        for h in 0..self.twins.len() {
            if self.gluing_conflicts(&flips, h) {
                return Orientation::Nonorientable;
            }
        }
        Orientation::Oriented { flips }
    }

    fn check_connected(&self) -> Result<(), ComplexError> {
        let mut visited = vec![false; self.faces.len()];
        let mut queue = VecDeque::new();
        visited[0] = true;
        queue.push_back(0usize);
        let mut count = 1;
        while let Some(f) = queue.pop_front() {
            for s in 0..3 {
                let g = self.twins[f * 3 + s] / 3;
                if !visited[g] {
                    visited[g] = true;
                    count += 1;
                    queue.push_back(g);
                }
            }
        }
        if count != self.faces.len() {
            return Err(ComplexError::Disconnected);
        }
        Ok(())
    }

    fn check_links(&self) -> Result<(), ComplexError> {
        let mut corner_count = vec![0usize; self.vertex_count];
        for f in &self.faces {
            for &v in f {
                corner_count[v] += 1;
            }
        }
        for v in 0..self.vertex_count {
            if corner_count[v] == 0 {
                return Err(ComplexError::IsolatedVertex(v));
            }
            let link = self.walk_link(v, None);
            if link.steps.len() != corner_count[v] {
                return Err(ComplexError::PinchedVertex(v));
            }
        }
        Ok(())
    }

    /// Walk the fan of faces around `v`.
    ///
    /// With an orientation, every link is traversed in the positive direction.
    /// Without one, the direction is deterministic: the walk starts at the
    /// lowest-id incident face and first crosses the lower-id of its two
    /// incident edges.
    fn walk_link(&self, v: usize, flips: Option<&[bool]>) -> VertexLink {
        // find lowest incident face and v's corner in it
        let mut start: Option<(usize, usize)> = None;
        'outer: for (fi, f) in self.faces.iter().enumerate() {
            for s in 0..3 {
                if f[s] == v {
                    start = Some((fi, s));
                    break 'outer;
                }
            }
        }
        let (f0, c0) = start.expect("isolated vertices are rejected at validation");

        // The two halfedges of face f0 incident to corner c0 are slot c0
        // (v -> next) and slot (c0+2)%3 (prev -> v).
        let out_h = f0 * 3 + c0;
        let in_h = f0 * 3 + (c0 + 2) % 3;
        let first_crossing = match flips {
            Some(fl) => {
                // Positive rotation around v leaves an unflipped face across
                // the edge entering v (slot c0+2); a flipped face across the
                // outgoing edge.
                if fl[f0] {
                    out_h
                } else {
                    in_h
                }
            }
            None => {
                if self.edge_of[out_h] < self.edge_of[in_h] {
                    out_h
                } else {
                    in_h
                }
            }
        };

        let mut steps = Vec::new();
        let mut face = f0;
        let mut corner = c0;
        let mut crossing = first_crossing;
        loop {
            steps.push(LinkStep {
                face,
                corner,
                crossing,
            });
            let t = self.twins[crossing];
            let nf = t / 3;
            // locate v's corner in the next face
            let (a, b) = self.halfedge_vertices(t);
            let nc = if a == v {
                t % 3
            } else {
                debug_assert_eq!(b, v);
                (t % 3 + 1) % 3
            };
            if nf == f0 && nc == c0 {
                break;
            }
            // leave through the other edge of nf incident to v
            let h1 = nf * 3 + nc;
            let h2 = nf * 3 + (nc + 2) % 3;
            let entered = t;
            crossing = if entered == h1 { h2 } else { h1 };
            face = nf;
            corner = nc;
            if steps.len() > self.faces.len() * 3 {
                // guarded by check_links; cannot spin forever on valid data
                break;
            }
        }
        VertexLink { vertex: v, steps }
    }

    /// The cyclic fan of faces around `v`, oriented positively when the
    /// complex is orientable (canonical orientation), otherwise in the
    /// deterministic direction.
    pub fn vertex_link(&self, v: usize) -> VertexLink {
        match self.orient() {
            Orientation::Oriented { flips } => self.walk_link(v, Some(&flips)),
            Orientation::Nonorientable => self.walk_link(v, None),
        }
    }

    /// The fan around `v` in the positive direction of a given orientation.
    pub fn vertex_link_oriented(&self, v: usize, ori: &Orientation) -> VertexLink {
        match ori {
            Orientation::Oriented { flips } => self.walk_link(v, Some(flips)),
            Orientation::Nonorientable => self.walk_link(v, None),
        }
    }

    /// The fan around `v` in the deterministic direction, ignoring any
    /// orientation. Mod-2 quantities are direction-independent.
    pub fn vertex_link_deterministic(&self, v: usize) -> VertexLink {
        self.walk_link(v, None)
    }
}

/// A closed connected 1-manifold: `n` vertices in a single cycle. Edge `i`
/// joins vertex `i` to vertex `(i + 1) % n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleComplex {
    vertex_count: usize,
}

impl CircleComplex {
    pub fn new(vertex_count: usize) -> CircleComplex {
        assert!(vertex_count >= 1);
        CircleComplex { vertex_count }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.vertex_count
    }

    pub fn euler_characteristic(&self) -> i64 {
        0
    }

    /// The edge on the negative side of vertex `v` (edge v-1 → v).
    pub fn edge_before(&self, v: usize) -> usize {
        (v + self.vertex_count - 1) % self.vertex_count
    }

    /// The edge on the positive side of vertex `v` (edge v → v+1).
    pub fn edge_after(&self, v: usize) -> usize {
        v
    }
}

// ---------------------------------------------------------------------------
// Built-in generators
// ---------------------------------------------------------------------------

/// The octahedron: 6 vertices (0 top, 5 bottom, 1..4 equatorial), 8 faces.
pub fn octahedron() -> SurfaceComplex {
    let faces = vec![
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 1],
        [5, 2, 1],
        [5, 3, 2],
        [5, 4, 3],
        [5, 1, 4],
    ];
    let coords = vec![
        [0.0, 0.0, 1.0],
        [1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, -1.0],
    ];
    SurfaceComplex::from_faces(6, faces)
        .expect("octahedron is valid")
        .with_coords(coords)
}

/// The icosahedron: 12 vertices, 20 faces.
pub fn icosahedron() -> SurfaceComplex {
    let a = |i: usize| 1 + i % 5;
    let b = |i: usize| 6 + i % 5;
    let mut faces = Vec::with_capacity(20);
    for i in 0..5 {
        faces.push([0, a(i), a(i + 1)]);
    }
    for i in 0..5 {
        faces.push([a(i + 1), a(i), b(i)]);
        faces.push([a(i + 1), b(i), b(i + 1)]);
    }
    for i in 0..5 {
        faces.push([11, b(i), b(i + 1)]);
    }
    let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
    let mut coords = vec![[0.0, 0.0, phi]];
    for ring in 0..2 {
        for i in 0..5 {
            let ang = (i as f64 + 0.5 * ring as f64) / 5.0 * std::f64::consts::TAU;
            let z = if ring == 0 { 0.5 } else { -0.5 };
            coords.push([phi * ang.cos(), phi * ang.sin(), z]);
        }
    }
    coords.push([0.0, 0.0, -phi]);
    SurfaceComplex::from_faces(12, faces)
        .expect("icosahedron is valid")
        .with_coords(coords)
}

/// An N x N triangulated torus grid (N >= 3). N = 4 gives the 16-vertex,
/// 32-face mesh.
pub fn torus_grid(n: usize) -> SurfaceComplex {
    assert!(n >= 3);
    let v = |i: usize, j: usize| (j % n) * n + (i % n);
    let mut faces = Vec::with_capacity(2 * n * n);
    for j in 0..n {
        for i in 0..n {
            let a = v(i, j);
            let b = v(i + 1, j);
            let c = v(i, j + 1);
            let d = v(i + 1, j + 1);
            faces.push([a, b, c]);
            faces.push([b, d, c]);
        }
    }
    let mut coords = vec![[0.0; 3]; n * n];
    for j in 0..n {
        for i in 0..n {
            let u = i as f64 / n as f64 * std::f64::consts::TAU;
            let w = j as f64 / n as f64 * std::f64::consts::TAU;
            let r = 2.0 + w.cos();
            coords[v(i, j)] = [r * u.cos(), r * u.sin(), w.sin()];
        }
    }
    SurfaceComplex::from_faces(n * n, faces)
        .expect("torus grid is valid")
        .with_coords(coords)
}

/// Connected sum of two complexes: removes one face from each and glues the
/// boundary triangles with reversed orientation. χ = χ₁ + χ₂ − 2.
pub fn connected_sum(a: &SurfaceComplex, b: &SurfaceComplex) -> SurfaceComplex {
    let fa = a.faces()[0];
    let fb = b.faces()[0];
    // identify fb[0]<->fa[0], fb[1]<->fa[2], fb[2]<->fa[1] (reversed)
    let mut remap = vec![usize::MAX; b.vertex_count()];
    remap[fb[0]] = fa[0];
    remap[fb[1]] = fa[2];
    remap[fb[2]] = fa[1];
    let mut next = a.vertex_count();
    for v in 0..b.vertex_count() {
        if remap[v] == usize::MAX {
            remap[v] = next;
            next += 1;
        }
    }
    let mut faces: Vec<[usize; 3]> = a.faces()[1..].to_vec();
    for f in &b.faces()[1..] {
        faces.push([remap[f[0]], remap[f[1]], remap[f[2]]]);
    }
    let mut complex =
        SurfaceComplex::from_faces(next, faces).expect("connected sum of valid closed surfaces");
    if let (Some(ca), Some(cb)) = (a.coords(), b.coords()) {
        let mut coords = vec![[0.0; 3]; next];
        for (v, c) in ca.iter().enumerate() {
            coords[v] = *c;
        }
        for v in 0..b.vertex_count() {
            if remap[v] >= a.vertex_count() {
                let c = cb[v];
                coords[remap[v]] = [c[0] + 6.0, c[1], c[2]];
            }
        }
        complex = complex.with_coords(coords);
    }
    complex
}

/// An orientable surface of genus g: the octahedron for g = 0, otherwise an
/// iterated connected sum of 4x4 torus grids.
pub fn genus_surface(g: usize) -> SurfaceComplex {
    if g == 0 {
        return octahedron();
    }
    let mut acc = torus_grid(4);
    for _ in 1..g {
        acc = connected_sum(&acc, &torus_grid(4));
    }
    acc
}

/// The minimal 6-vertex triangulation of the real projective plane.
pub fn projective_plane() -> SurfaceComplex {
    let faces = vec![
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 5, 1],
        [1, 2, 4],
        [2, 3, 5],
        [3, 4, 1],
        [4, 5, 2],
        [5, 1, 3],
    ];
    SurfaceComplex::from_faces(6, faces).expect("minimal projective plane is valid")
}

/// A 16-vertex triangulated Klein bottle (4x4 grid with a reflected seam).
pub fn klein_bottle() -> SurfaceComplex {
    let n = 4usize;
    let wrap = |i: usize, j: usize| -> usize {
        let i = i % n;
        if j < n {
            j * n + i
        } else {
            // (x, 1) ~ (1 - x, 0)
            (n - i) % n
        }
    };
    let mut faces = Vec::with_capacity(2 * n * n);
    for j in 0..n {
        for i in 0..n {
            let a = wrap(i, j);
            let b = wrap(i + 1, j);
            let c = wrap(i, j + 1);
            let d = wrap(i + 1, j + 1);
            faces.push([a, b, c]);
            faces.push([b, d, c]);
        }
    }
    SurfaceComplex::from_faces(n * n, faces).expect("klein bottle grid is valid")
}

/// An N-gon circle complex.
pub fn ngon(n: usize) -> CircleComplex {
    CircleComplex::new(n)
}
