//! Construction of the marked graphs: polygon chains, polygon rings, and the
//! pendant gadget used for transfer-matrix generation.
//!
//! Every face is laid out the same way. A face of size `s` entered through
//! the marked edge `(a, b)` contributes a path of `s - 2` fresh vertices
//! `w1..w(s-2)` with `w1` attached to `a` and `w(s-2)` attached to `b`; its
//! exiting shared edge at offset `k` is `(w_k, w_(k+1))`, whose endpoints act
//! as `(a, b)` for the next face. Walking the face cycle as stored
//! (`b, a, w1, .., w(s-2)`) crosses the entering edge `b -> a` and the
//! exiting edge `w_k -> w_(k+1)`, so the two faces on a shared edge traverse
//! it in opposite directions, as a planar drawing does, and `k` is the number
//! of edges strictly between the two shared edges in that walk.
//!
//! Rings close up by using the entering edge of face 1 as the exiting edge of
//! face `n`: positions `k_n` and `k_n + 1` of the last face's path reuse the
//! vertices of that edge instead of fresh ones.
//!
//! The gadget for `(m, i)` takes the `m`-cycle `v0..v(m-1)` with marked edge
//! `(a, b) = (v1, v0)` and exiting edge `(d, c) = (v(i+1), v(i+2))`, deletes
//! `dc`, and hangs pendant vertices `k1` off `d` and `k2` off `c`. The
//! cycle neighbours `e` of `d` and `f` of `c` (other than along `dc`) are
//! recorded; `e` coincides with `a` when `i = 1` and `f` with `b` when
//! `i = m - 3`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::notation::{ChainSpec, RingSpec};

/// Plain undirected simple graph over vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: alloc::vec![Vec::new(); n], edge_count: 0 }
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    /// Panics on loops, duplicate edges, and out-of-range endpoints: the
    /// builders never produce them, and silently ignoring one would corrupt
    /// counts downstream.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "loop at vertex {}", u);
        assert!(u < self.adj.len() && v < self.adj.len(), "edge ({}, {}) out of range", u, v);
        assert!(!self.has_edge(u, v), "duplicate edge ({}, {})", u, v);
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.adj[u].sort_unstable();
        self.adj[v].sort_unstable();
        self.edge_count += 1;
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn cycle(m: usize) -> Self {
        assert!(m >= 3);
        let mut g = Graph::new(m);
        for v in 0..m {
            g.add_edge(v, (v + 1) % m);
        }
        g
    }

    pub fn path(m: usize) -> Self {
        let mut g = Graph::new(m);
        for v in 1..m {
            g.add_edge(v - 1, v);
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as ordered pairs `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.vertex_count();
        let mut g = self.clone();
        for _ in 0..other.vertex_count() {
            g.add_vertex();
        }
        for (u, v) in other.edges() {
            g.add_edge(u + shift, v + shift);
        }
        g
    }

    /// Union of `self` and `other` along one edge: `other_edge.0` is
    /// identified with `self_edge.0`, `other_edge.1` with `self_edge.1`, and
    /// the remaining vertices of `other` are appended. Both marked edges must
    /// exist, so the shared edge is not duplicated.
    pub fn glued(
        &self,
        self_edge: (usize, usize),
        other: &Graph,
        other_edge: (usize, usize),
    ) -> Graph {
        assert!(self.has_edge(self_edge.0, self_edge.1));
        assert!(other.has_edge(other_edge.0, other_edge.1));
        let mut g = self.clone();
        let mut map = alloc::vec![usize::MAX; other.vertex_count()];
        map[other_edge.0] = self_edge.0;
        map[other_edge.1] = self_edge.1;
        for slot in map.iter_mut() {
            if *slot == usize::MAX {
                *slot = g.add_vertex();
            }
        }
        for (u, v) in other.edges() {
            if (u, v) != (other_edge.0.min(other_edge.1), other_edge.0.max(other_edge.1)) {
                g.add_edge(map[u], map[v]);
            }
        }
        g
    }
}

/// Marks attached to a gadget graph; see the module docs for the layout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetMarks {
    /// Marked edge in role order `(a, b)`.
    pub ab: (usize, usize),
    pub k1: usize,
    pub k2: usize,
    pub d: usize,
    pub c: usize,
    pub e: usize,
    pub f: usize,
}

/// Ring seam: the adhesive edge in role order `(d, c)` together with the
/// last-face cycle neighbours `e` of `d` and `f` of `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeamMarks {
    pub edge: (usize, usize),
    pub e: usize,
    pub f: usize,
}

/// A graph together with its face cycles and marked vertices/edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedGraph {
    graph: Graph,
    labels: Vec<String>,
    faces: Vec<Vec<usize>>,
    /// Role-ordered `(d, c)` pairs: `e_2..e_n` for a chain, `e_1..e_n` for a
    /// ring (`e_1` is the adhesive edge).
    shared_edges: Vec<(usize, usize)>,
    terminal_ab: Option<(usize, usize)>,
    terminal_dc: Option<(usize, usize)>,
    seam: Option<SeamMarks>,
    gadget: Option<GadgetMarks>,
}

impl MarkedGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn shared_edges(&self) -> &[(usize, usize)] {
        &self.shared_edges
    }

    /// Chain only: the free marked edge of face 1, role order `(a, b)`.
    pub fn terminal_ab(&self) -> Option<(usize, usize)> {
        self.terminal_ab
    }

    /// Chain only: the free marked edge of face `n`, role order `(d, c)`.
    pub fn terminal_dc(&self) -> Option<(usize, usize)> {
        self.terminal_dc
    }

    pub fn seam(&self) -> Option<&SeamMarks> {
        self.seam.as_ref()
    }

    pub fn gadget(&self) -> Option<&GadgetMarks> {
        self.gadget.as_ref()
    }

    /// Structural self-check used by tests and debug builds: face cycles are
    /// cycles, no vertex lies on more than two faces, and every recorded
    /// shared edge is traversed in opposite directions by its two faces.
    pub fn validate(&self) -> Result<(), String> {
        for (fi, face) in self.faces.iter().enumerate() {
            if face.len() < 4 {
                return Err(format!("face {} has only {} vertices", fi + 1, face.len()));
            }
            for i in 0..face.len() {
                let u = face[i];
                let v = face[(i + 1) % face.len()];
                if !self.graph.has_edge(u, v) {
                    return Err(format!("face {} claims missing edge ({}, {})", fi + 1, u, v));
                }
            }
        }
        let mut membership = alloc::vec![0usize; self.vertex_count()];
        for face in &self.faces {
            for &v in face {
                membership[v] += 1;
                if membership[v] > 2 {
                    return Err(format!("vertex {} lies on more than two faces", v));
                }
            }
        }
        let n = self.faces.len();
        let ring = self.seam.is_some();
        for (si, &(d, c)) in self.shared_edges.iter().enumerate() {
            if !self.graph.has_edge(d, c) {
                return Err(format!("shared edge ({}, {}) missing", d, c));
            }
            // Chains record e_2.. so shared edge si joins faces si and si+1;
            // rings record e_1.. so edge si joins faces (si + n - 1) % n and si.
            let (exit_face, entry_face) = if ring {
                ((si + n - 1) % n, si)
            } else {
                (si, si + 1)
            };
            let traverses = |fi: usize, u: usize, v: usize| {
                let face = &self.faces[fi];
                (0..face.len()).any(|i| face[i] == u && face[(i + 1) % face.len()] == v)
            };
            if !traverses(exit_face, d, c) {
                return Err(format!("face {} does not traverse shared edge d->c", exit_face + 1));
            }
            if !traverses(entry_face, c, d) {
                return Err(format!("face {} does not traverse shared edge c->d", entry_face + 1));
            }
        }
        Ok(())
    }

    /// Edge-list text dump: `# `-prefixed header lines for labels, faces and
    /// marks, then one `u v` line per edge (by label).
    pub fn to_dump(&self) -> String {
        let mut out = String::from("# polymatch dump\n");
        out.push_str(&format!("# vertices: {}\n", self.vertex_count()));
        for (v, label) in self.labels.iter().enumerate() {
            out.push_str(&format!("# vertex: {} {}\n", v, label));
        }
        for face in &self.faces {
            out.push_str("# face:");
            for &v in face {
                out.push(' ');
                out.push_str(&self.labels[v]);
            }
            out.push('\n');
        }
        for &(d, c) in &self.shared_edges {
            out.push_str(&format!("# shared: {} {}\n", self.labels[d], self.labels[c]));
        }
        if let Some((a, b)) = self.terminal_ab {
            out.push_str(&format!("# terminal-ab: {} {}\n", self.labels[a], self.labels[b]));
        }
        if let Some((d, c)) = self.terminal_dc {
            out.push_str(&format!("# terminal-dc: {} {}\n", self.labels[d], self.labels[c]));
        }
        if let Some(seam) = &self.seam {
            out.push_str(&format!(
                "# seam: {} {} {} {}\n",
                self.labels[seam.edge.0], self.labels[seam.edge.1], self.labels[seam.e],
                self.labels[seam.f]
            ));
        }
        if let Some(g) = &self.gadget {
            out.push_str(&format!("# gadget-ab: {} {}\n", self.labels[g.ab.0], self.labels[g.ab.1]));
            out.push_str(&format!("# gadget-pendants: {} {}\n", self.labels[g.k1], self.labels[g.k2]));
            out.push_str(&format!("# gadget-dc: {} {}\n", self.labels[g.d], self.labels[g.c]));
            out.push_str(&format!("# gadget-ef: {} {}\n", self.labels[g.e], self.labels[g.f]));
        }
        for (u, v) in self.graph.edges() {
            out.push_str(&format!("{} {}\n", self.labels[u], self.labels[v]));
        }
        out
    }

    /// Parse the format produced by [`MarkedGraph::to_dump`].
    pub fn from_dump(text: &str) -> Result<MarkedGraph, DumpError> {
        let mut labels: Vec<String> = Vec::new();
        let mut faces_raw: Vec<Vec<String>> = Vec::new();
        let mut shared_raw: Vec<(String, String)> = Vec::new();
        let mut terminal_ab_raw = None;
        let mut terminal_dc_raw = None;
        let mut seam_raw: Option<[String; 4]> = None;
        let mut gadget_raw: [Option<(String, String)>; 4] = [None, None, None, None];
        let mut edge_raw: Vec<(String, String)> = Vec::new();

        let err = |line: usize, message: &str| DumpError { line, message: message.to_string() };
        let pair = |line: usize, rest: &str| -> Result<(String, String), DumpError> {
            let mut it = rest.split_whitespace();
            match (it.next(), it.next(), it.next()) {
                (Some(a), Some(b), None) => Ok((a.to_string(), b.to_string())),
                _ => Err(err(line, "expected two labels")),
            }
        };

        for (i, raw_line) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw_line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(header) = line.strip_prefix('#') {
                let header = header.trim();
                if let Some(rest) = header.strip_prefix("vertex:") {
                    let (idx, label) = pair(line_no, rest)?;
                    let idx: usize =
                        idx.parse().map_err(|_| err(line_no, "bad vertex index"))?;
                    if idx != labels.len() {
                        return Err(err(line_no, "vertex indices must be consecutive"));
                    }
                    labels.push(label);
                } else if let Some(rest) = header.strip_prefix("face:") {
                    faces_raw.push(rest.split_whitespace().map(|s| s.to_string()).collect());
                } else if let Some(rest) = header.strip_prefix("shared:") {
                    shared_raw.push(pair(line_no, rest)?);
                } else if let Some(rest) = header.strip_prefix("terminal-ab:") {
                    terminal_ab_raw = Some(pair(line_no, rest)?);
                } else if let Some(rest) = header.strip_prefix("terminal-dc:") {
                    terminal_dc_raw = Some(pair(line_no, rest)?);
                } else if let Some(rest) = header.strip_prefix("seam:") {
                    let parts: Vec<String> =
                        rest.split_whitespace().map(|s| s.to_string()).collect();
                    let parts: [String; 4] =
                        parts.try_into().map_err(|_| err(line_no, "expected four labels"))?;
                    seam_raw = Some(parts);
                } else if let Some(rest) = header.strip_prefix("gadget-ab:") {
                    gadget_raw[0] = Some(pair(line_no, rest)?);
                } else if let Some(rest) = header.strip_prefix("gadget-pendants:") {
                    gadget_raw[1] = Some(pair(line_no, rest)?);
                } else if let Some(rest) = header.strip_prefix("gadget-dc:") {
                    gadget_raw[2] = Some(pair(line_no, rest)?);
                } else if let Some(rest) = header.strip_prefix("gadget-ef:") {
                    gadget_raw[3] = Some(pair(line_no, rest)?);
                }
                // Unknown headers (including the banner) are ignored.
            } else {
                edge_raw.push(pair(line_no, line)?);
            }
        }

        let lookup = |label: &str| -> Result<usize, DumpError> {
            labels
                .iter()
                .position(|l| l == label)
                .ok_or_else(|| err(0, "unknown vertex label"))
        };
        let lookup_pair = |p: &(String, String)| -> Result<(usize, usize), DumpError> {
            Ok((lookup(&p.0)?, lookup(&p.1)?))
        };

        let mut graph = Graph::new(labels.len());
        for e in &edge_raw {
            let (u, v) = lookup_pair(e)?;
            if u == v || graph.has_edge(u, v) {
                return Err(err(0, "loop or duplicate edge"));
            }
            graph.add_edge(u, v);
        }
        let mut faces = Vec::new();
        for face in &faces_raw {
            let mut cycle = Vec::with_capacity(face.len());
            for label in face {
                cycle.push(lookup(label)?);
            }
            faces.push(cycle);
        }
        let mut shared_edges = Vec::new();
        for s in &shared_raw {
            shared_edges.push(lookup_pair(s)?);
        }
        let terminal_ab = terminal_ab_raw.as_ref().map(&lookup_pair).transpose()?;
        let terminal_dc = terminal_dc_raw.as_ref().map(&lookup_pair).transpose()?;
        let seam = match &seam_raw {
            Some([d, c, e, f]) => Some(SeamMarks {
                edge: (lookup(d)?, lookup(c)?),
                e: lookup(e)?,
                f: lookup(f)?,
            }),
            None => None,
        };
        let gadget = match &gadget_raw {
            [Some(ab), Some(ks), Some(dc), Some(ef)] => {
                let (k1, k2) = lookup_pair(ks)?;
                let (d, c) = lookup_pair(dc)?;
                let (e, f) = lookup_pair(ef)?;
                Some(GadgetMarks { ab: lookup_pair(ab)?, k1, k2, d, c, e, f })
            }
            _ => None,
        };

        Ok(MarkedGraph {
            graph,
            labels,
            faces,
            shared_edges,
            terminal_ab,
            terminal_dc,
            seam,
            gadget,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DumpError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for DumpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line > 0 {
            write!(f, "dump error at line {}: {}", self.line, self.message)
        } else {
            write!(f, "dump error: {}", self.message)
        }
    }
}

/// Offset outside `1..=size-3` (or size below 4) where an integer offset is
/// required.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OffsetRangeError {
    pub size: u32,
    pub offset: u32,
}

impl fmt::Display for OffsetRangeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "offset {} is out of range for face size {} (need size >= 4 and 1 <= offset <= size - 3)",
            self.offset, self.size
        )
    }
}

struct Builder {
    graph: Graph,
    labels: Vec<String>,
}

impl Builder {
    fn new() -> Self {
        Builder { graph: Graph::new(0), labels: Vec::new() }
    }

    fn vertex(&mut self, face: usize, pos: usize) -> usize {
        let v = self.graph.add_vertex();
        self.labels.push(format!("f{}p{}", face, pos));
        v
    }

    /// Append one face entered through `(a, b)`. Returns the stored cycle
    /// `[b, a, w1, .., w(s-2)]`. `reuse` substitutes existing vertices for
    /// path positions `k` and `k + 1` (ring closure); the edge between them
    /// must already exist.
    fn grow_face(
        &mut self,
        face_no: usize,
        a: usize,
        b: usize,
        size: usize,
        reuse: Option<(usize, (usize, usize))>,
    ) -> Vec<usize> {
        let mut cycle = Vec::with_capacity(size);
        cycle.push(b);
        cycle.push(a);
        for t in 1..=size - 2 {
            let v = match reuse {
                Some((k, (ra, _))) if t == k => ra,
                Some((k, (_, rb))) if t == k + 1 => rb,
                _ => self.vertex(face_no, t + 1),
            };
            cycle.push(v);
        }
        for t in 1..=size - 2 {
            if let Some((k, _)) = reuse {
                if t == k + 1 {
                    continue; // the adhesive edge w_k -- w_(k+1) already exists
                }
            }
            let prev = cycle[t]; // w(t-1), or a for t = 1
            let cur = cycle[t + 1];
            self.graph.add_edge(prev, cur);
        }
        self.graph.add_edge(cycle[size - 1], b);
        cycle
    }
}

/// Build the graph of a polygon chain. Face 1 carries the free marked edge
/// `(a, b)` and face `n` the free marked edge `(d, c)`; both sit one edge
/// past their face's shared edge, so the first and last transfer matrices
/// are the offset-1 ones.
pub fn build_chain(spec: &ChainSpec) -> MarkedGraph {
    let faces_spec = spec.faces();
    let n = faces_spec.len();
    let mut b = Builder::new();

    let b1 = b.vertex(1, 0);
    let a1 = b.vertex(1, 1);
    b.graph.add_edge(b1, a1);

    let mut faces = Vec::with_capacity(n);
    let mut shared_edges = Vec::with_capacity(n - 1);
    let (mut a, mut bb) = (a1, b1);
    for (j, face) in faces_spec.iter().enumerate() {
        let size = face.size as usize;
        let cycle = b.grow_face(j + 1, a, bb, size, None);
        // Terminal faces use offset 1; the exit edge of face n is its free
        // marked edge rather than a shared edge.
        let k = face.offset.unwrap_or(1) as usize;
        let (d, c) = (cycle[k + 1], cycle[k + 2]);
        faces.push(cycle);
        if j + 1 < n {
            shared_edges.push((d, c));
        }
        a = d;
        bb = c;
    }

    let terminal_dc = (a, bb);
    let mg = MarkedGraph {
        graph: b.graph,
        labels: b.labels,
        faces,
        shared_edges,
        terminal_ab: Some((a1, b1)),
        terminal_dc: Some(terminal_dc),
        seam: None,
        gadget: None,
    };
    debug_assert_eq!(mg.validate(), Ok(()));
    mg
}

/// Build the graph of a polygon ring. The adhesive edge `e_1` doubles as the
/// entering edge of face 1 and the exiting edge of face `n`.
pub fn build_ring(spec: &RingSpec) -> MarkedGraph {
    let faces_spec = spec.faces();
    let n = faces_spec.len();
    let mut b = Builder::new();

    let b1 = b.vertex(1, 0);
    let a1 = b.vertex(1, 1);
    b.graph.add_edge(b1, a1);

    let mut faces = Vec::with_capacity(n);
    let mut shared_edges = Vec::with_capacity(n);
    shared_edges.push((a1, b1)); // e_1, roles (d, c) = (a1, b1)
    let (mut a, mut bb) = (a1, b1);
    for (j, face) in faces_spec.iter().enumerate() {
        let size = face.size as usize;
        let k = face.offset.expect("ring faces always carry offsets") as usize;
        let last = j + 1 == n;
        let reuse = if last { Some((k, (a1, b1))) } else { None };
        let cycle = b.grow_face(j + 1, a, bb, size, reuse);
        let (d, c) = (cycle[k + 1], cycle[k + 2]);
        if !last {
            shared_edges.push((d, c));
        }
        faces.push(cycle);
        a = d;
        bb = c;
    }

    let last_cycle = &faces[n - 1];
    let kn = faces_spec[n - 1].offset.unwrap() as usize;
    let sn = faces_spec[n - 1].size as usize;
    let seam = SeamMarks {
        edge: (a1, b1),
        e: last_cycle[kn],            // neighbour of d on face n
        f: last_cycle[(kn + 3) % sn], // neighbour of c on face n
    };

    let mg = MarkedGraph {
        graph: b.graph,
        labels: b.labels,
        faces,
        shared_edges,
        terminal_ab: None,
        terminal_dc: None,
        seam: Some(seam),
        gadget: None,
    };
    debug_assert_eq!(mg.validate(), Ok(()));
    mg
}

/// Build the pendant gadget for a face of size `m` with offset `i`.
pub fn build_gadget(m: u32, i: u32) -> Result<MarkedGraph, OffsetRangeError> {
    if m < 4 || i < 1 || i > m - 3 {
        return Err(OffsetRangeError { size: m, offset: i });
    }
    let m = m as usize;
    let i = i as usize;

    let mut graph = Graph::new(m + 2);
    let mut labels: Vec<String> = (0..m).map(|v| format!("v{}", v)).collect();
    labels.push("k1".to_string());
    labels.push("k2".to_string());
    let (d, c) = (i + 1, i + 2);
    for v in 0..m {
        let u = (v + 1) % m;
        if (v, u) != (d, c) {
            graph.add_edge(v, u);
        }
    }
    let (k1, k2) = (m, m + 1);
    graph.add_edge(k1, d);
    graph.add_edge(k2, c);

    let marks = GadgetMarks { ab: (1, 0), k1, k2, d, c, e: i, f: (i + 3) % m };
    Ok(MarkedGraph {
        graph,
        labels,
        faces: Vec::new(),
        shared_edges: Vec::new(),
        terminal_ab: None,
        terminal_dc: None,
        seam: None,
        gadget: Some(marks),
    })
}
