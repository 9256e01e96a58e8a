//! Signed rotation systems: boundary-walk machinery, quasi-tree families,
//! partial duality, and single-vertex alternation interlacement.
//!
//! Boundary tracing works on a doubled representation: every edge-end token
//! occupies an arc of its vertex disc with two endpoints, `In` and `Out`,
//! named for the positive traversal direction of the disc. A band of an
//! untwisted edge joins In to the far Out on each of its two sides; a
//! twisted band joins In to In and Out to Out. Boundary components are the
//! cycles of the resulting degree-two incidence structure.

use rand::Rng;

use crate::dm::DeltaMatroid;
use crate::error::{Error, Result};
use crate::ground::{GroundSet, SubsetMask};
use crate::interlace;

/// One end of an edge: the edge index and which end (0 or 1).
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct EndRef {
    pub edge: usize,
    pub end: u8,
}

/// In/Out endpoint of an edge-end token along the positive disc direction.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum EndSide {
    In,
    Out,
}

/// Boundary components of a spanning ribbon subgraph. Every (end, side)
/// point of a traced edge appears in exactly one trace exactly once; edges
/// outside the traced subset do not appear.
#[derive(Clone, Debug)]
pub struct BoundaryReport {
    pub count: usize,
    pub traces: Vec<Vec<(EndRef, EndSide)>>,
}

/// A connected ribbon graph as a signed rotation system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonGraph {
    vertex_labels: Vec<String>,
    edge_labels: Vec<String>,
    twisted: Vec<bool>,
    rotations: Vec<Vec<EndRef>>,
}

#[derive(Copy, Clone, Debug)]
enum Incidence {
    /// Passed over an untraced edge end; `forward` means In to Out.
    Pass { edge: usize, end: u8, forward: bool },
    /// Ran along a band side of a traced edge; `forward` means from the
    /// end-0 endpoint to the end-1 endpoint.
    Side { edge: usize, side: u8, forward: bool },
}

struct Trace {
    components: Vec<Vec<Incidence>>,
    point_visits: Vec<Vec<usize>>,
    tokenless_vertices: usize,
}

impl RibbonGraph {
    pub fn new<S: Into<String>>(
        vertex_labels: Vec<S>,
        edge_labels: Vec<S>,
        twisted: Vec<bool>,
        rotations: Vec<Vec<EndRef>>,
    ) -> Result<Self> {
        let g = RibbonGraph {
            vertex_labels: vertex_labels.into_iter().map(Into::into).collect(),
            edge_labels: edge_labels.into_iter().map(Into::into).collect(),
            twisted,
            rotations,
        };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        GroundSet::new(self.vertex_labels.iter().cloned())?;
        GroundSet::new(self.edge_labels.iter().cloned())?;
        if self.twisted.len() != self.edge_labels.len()
            || self.rotations.len() != self.vertex_labels.len()
        {
            return Err(Error::Parse { line: 0, msg: "inconsistent ribbon shape".into() });
        }
        let mut seen = vec![[0usize; 2]; self.edge_labels.len()];
        for rot in &self.rotations {
            for t in rot {
                if t.edge >= self.edge_labels.len() || t.end > 1 {
                    return Err(Error::Parse { line: 0, msg: "bad end token".into() });
                }
                seen[t.edge][t.end as usize] += 1;
            }
        }
        for (e, counts) in seen.iter().enumerate() {
            if counts != &[1, 1] {
                return Err(Error::EndCount(self.edge_labels[e].clone()));
            }
        }
        if !self.is_connected() {
            return Err(Error::DisconnectedRibbon);
        }
        Ok(())
    }

    fn is_connected(&self) -> bool {
        let n = self.vertex_labels.len();
        if n <= 1 {
            return true;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let ends = self.end_vertices();
        for e in 0..self.edge_labels.len() {
            let a = find(&mut parent, ends[e][0]);
            let b = find(&mut parent, ends[e][1]);
            parent[a] = b;
        }
        let root = find(&mut parent, 0);
        (1..n).all(|v| find(&mut parent, v) == root)
    }

    /// For each edge: the vertices carrying its two ends.
    fn end_vertices(&self) -> Vec<[usize; 2]> {
        let mut out = vec![[usize::MAX; 2]; self.edge_labels.len()];
        for (v, rot) in self.rotations.iter().enumerate() {
            for t in rot {
                out[t.edge][t.end as usize] = v;
            }
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_labels.len()
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    pub fn edge_labels(&self) -> &[String] {
        &self.edge_labels
    }

    pub fn is_twisted(&self, e: usize) -> bool {
        self.twisted[e]
    }

    pub fn rotations(&self) -> &[Vec<EndRef>] {
        &self.rotations
    }

    /// Ground set of edge labels in declaration order.
    pub fn edge_ground(&self) -> GroundSet {
        GroundSet::new(self.edge_labels.iter().cloned()).expect("validated labels")
    }

    fn check_edge_mask(&self, a: SubsetMask) -> Result<()> {
        if a.is_subset_of(SubsetMask::full(self.edge_count())) {
            Ok(())
        } else {
            Err(Error::InvalidMask)
        }
    }

    /// Walk all boundary components of the spanning subgraph (V, A).
    fn trace(&self, a: SubsetMask) -> Trace {
        // Token table: one entry per placed edge end, in rotation order.
        let mut token_ref: Vec<EndRef> = Vec::new();
        let mut token_next: Vec<usize> = Vec::new();
        let mut token_prev: Vec<usize> = Vec::new();
        let mut end_token = vec![[usize::MAX; 2]; self.edge_count()];
        let mut tokenless = 0usize;
        for rot in &self.rotations {
            if rot.is_empty() {
                tokenless += 1;
                continue;
            }
            let base = token_ref.len();
            let k = rot.len();
            for (i, t) in rot.iter().enumerate() {
                token_ref.push(*t);
                token_next.push(base + (i + 1) % k);
                token_prev.push(base + (i + k - 1) % k);
                end_token[t.edge][t.end as usize] = base + i;
            }
        }

        // Points: 2*token + 0 for In, 2*token + 1 for Out.
        let n_points = 2 * token_ref.len();
        let other = |p: usize| -> (usize, Incidence) {
            let t = p / 2;
            let at_out = p % 2 == 1;
            let EndRef { edge, end } = token_ref[t];
            if !a.contains(edge) {
                let q = 2 * t + (1 - p % 2);
                return (q, Incidence::Pass { edge, end, forward: !at_out });
            }
            let t0 = end_token[edge][0];
            let t1 = end_token[edge][1];
            let tw = self.twisted[edge];
            let at_first = t == t0;
            // side 0 holds the In endpoint of end 0; side 1 its Out endpoint
            let (side, partner, forward) = match (at_first, at_out, tw) {
                (true, false, false) => (0, 2 * t1 + 1, true),
                (true, false, true) => (0, 2 * t1, true),
                (true, true, false) => (1, 2 * t1, true),
                (true, true, true) => (1, 2 * t1 + 1, true),
                (false, true, false) => (0, 2 * t0, false),
                (false, false, true) => (0, 2 * t0, false),
                (false, false, false) => (1, 2 * t0 + 1, false),
                (false, true, true) => (1, 2 * t0 + 1, false),
            };
            (partner, Incidence::Side { edge, side, forward })
        };
        let disc = |p: usize| -> usize {
            let t = p / 2;
            if p % 2 == 1 {
                2 * token_next[t]
            } else {
                2 * token_prev[t] + 1
            }
        };

        let mut visited = vec![false; n_points];
        let mut components = Vec::new();
        let mut point_visits = Vec::new();
        for start in 0..n_points {
            if visited[start] {
                continue;
            }
            let mut incidences = Vec::new();
            let mut visits = Vec::new();
            let mut cur = start;
            loop {
                let (q, inc) = other(cur);
                visited[cur] = true;
                visited[q] = true;
                visits.push(cur);
                visits.push(q);
                incidences.push(inc);
                let next = disc(q);
                if next == start {
                    break;
                }
                cur = next;
            }
            components.push(incidences);
            point_visits.push(visits);
        }
        Trace { components, point_visits, tokenless_vertices: tokenless }
    }

    /// Count and trace the boundary components of the spanning ribbon
    /// subgraph on the edge subset `A`. With `A` empty the count is the
    /// number of vertices.
    pub fn boundary(&self, a: SubsetMask) -> Result<BoundaryReport> {
        self.check_edge_mask(a)?;
        let trace = self.trace(a);
        // Recover token identity for each visited point.
        let mut token_ref: Vec<EndRef> = Vec::new();
        for rot in &self.rotations {
            for t in rot {
                token_ref.push(*t);
            }
        }
        let mut traces: Vec<Vec<(EndRef, EndSide)>> = trace
            .point_visits
            .iter()
            .map(|visits| {
                visits
                    .iter()
                    .filter_map(|&p| {
                        let t = token_ref[p / 2];
                        if a.contains(t.edge) {
                            let side = if p % 2 == 0 { EndSide::In } else { EndSide::Out };
                            Some((t, side))
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect();
        for _ in 0..trace.tokenless_vertices {
            traces.push(Vec::new());
        }
        Ok(BoundaryReport { count: traces.len(), traces })
    }

    pub fn boundary_count(&self, a: SubsetMask) -> Result<usize> {
        Ok(self.boundary(a)?.count)
    }

    /// The graphic delta-matroid: feasible sets are the spanning quasi-trees
    /// (edge subsets with exactly one boundary component).
    pub fn graphic_dm(&self) -> Result<DeltaMatroid> {
        let m = self.edge_count();
        if m > 20 {
            return Err(Error::CapExceeded { what: "quasi-tree enumeration", limit: 20, got: m });
        }
        let ground = self.edge_ground();
        let mut feasibles = Vec::new();
        for bits in 0u64..(1u64 << m) {
            let a = SubsetMask(bits);
            if self.boundary_count(a)? == 1 {
                feasibles.push(a);
            }
        }
        if feasibles.is_empty() {
            return Err(Error::EmptyFamily);
        }
        DeltaMatroid::new(ground, feasibles)
    }

    /// The partial dual with respect to `A`: new vertices are the boundary
    /// components of (V, A), rotations are read off the traces, and signs
    /// come from comparing the two traversal directions of each edge.
    /// Correctness gate: the graphic delta-matroid of the result equals the
    /// twist by `A` of the original one.
    pub fn partial_dual(&self, a: SubsetMask) -> Result<RibbonGraph> {
        self.check_edge_mask(a)?;
        let trace = self.trace(a);
        let mut vertex_labels = Vec::new();
        let mut rotations = Vec::new();
        let mut dirs: Vec<[Option<bool>; 2]> = vec![[None, None]; self.edge_count()];
        for comp in &trace.components {
            vertex_labels.push(format!("q{}", vertex_labels.len() + 1));
            let mut rot = Vec::with_capacity(comp.len());
            for inc in comp {
                match *inc {
                    Incidence::Pass { edge, end, forward } => {
                        rot.push(EndRef { edge, end });
                        dirs[edge][end as usize] = Some(forward);
                    }
                    Incidence::Side { edge, side, forward } => {
                        rot.push(EndRef { edge, end: side });
                        dirs[edge][side as usize] = Some(forward);
                    }
                }
            }
            rotations.push(rot);
        }
        for _ in 0..trace.tokenless_vertices {
            vertex_labels.push(format!("q{}", vertex_labels.len() + 1));
            rotations.push(Vec::new());
        }
        let twisted = (0..self.edge_count())
            .map(|e| {
                let d0 = dirs[e][0].expect("every end is traced");
                let d1 = dirs[e][1].expect("every end is traced");
                if a.contains(e) {
                    // band sides become the new ends; equal side orientations
                    // mean the reattached band is twisted
                    d0 == d1
                } else {
                    self.twisted[e] ^ (d0 != d1)
                }
            })
            .collect();
        RibbonGraph::new(vertex_labels, self.edge_labels.clone(), twisted, rotations)
    }

    /// In a single-vertex ribbon graph: do the four end tokens of `e` and
    /// `f` alternate e..f..e..f around the vertex?
    pub fn vertex_alternation_interlaced(&self, e: usize, f: usize) -> Result<bool> {
        if self.vertex_count() != 1 {
            return Err(Error::MultiVertex);
        }
        if e == f {
            return Err(Error::SamePoint);
        }
        let rot = &self.rotations[0];
        let pos: Vec<usize> = rot
            .iter()
            .enumerate()
            .filter(|(_, t)| t.edge == e)
            .map(|(i, _)| i)
            .collect();
        let (p1, p2) = (pos[0], pos[1]);
        let between: Vec<bool> = rot
            .iter()
            .enumerate()
            .filter(|(_, t)| t.edge == f)
            .map(|(i, _)| i > p1 && i < p2)
            .collect();
        Ok(between[0] != between[1])
    }

    /// Alternation interlacement in the partial dual over a quasi-tree must
    /// match delta-matroid interlacement, and the orientability/pairing
    /// building blocks must match feasibility in the twist. Returns the
    /// conjunction over all pairs.
    pub fn quasi_tree_interlacement_check(&self, q: SubsetMask) -> Result<bool> {
        let dm = self.graphic_dm()?;
        if !dm.is_feasible(q) {
            return Err(Error::NotFeasible(dm.ground().set_string(q)));
        }
        let dual = self.partial_dual(q)?;
        if dual.vertex_count() != 1 {
            return Ok(false);
        }
        let twisted_dm = dm.twist(q)?;
        let m = self.edge_count();
        for e in 0..m {
            let ribbon =
                dual.boundary_count(SubsetMask::singleton(e))? == 1;
            let delta = interlace::is_nonorientable(&dm, q, e)?;
            debug_assert_eq!(delta, twisted_dm.is_feasible(SubsetMask::singleton(e)));
            if ribbon != delta {
                return Ok(false);
            }
        }
        for e in 0..m {
            for f in (e + 1)..m {
                let pair = SubsetMask::singleton(e) | SubsetMask::singleton(f);
                let ribbon_paired = dual.boundary_count(pair)? == 1;
                if ribbon_paired != twisted_dm.is_feasible(pair) {
                    return Ok(false);
                }
                let alt = dual.vertex_alternation_interlaced(e, f)?;
                if alt != interlace::is_interlaced(&dm, q, e, f)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn to_ribbon_string(&self) -> String {
        let mut out = String::new();
        for (v, rot) in self.rotations.iter().enumerate() {
            out.push_str(&format!("vertex {}:", self.vertex_labels[v]));
            for t in rot {
                out.push_str(&format!(" {}:{}", self.edge_labels[t.edge], t.end));
            }
            out.push('\n');
        }
        for (e, label) in self.edge_labels.iter().enumerate() {
            out.push_str(&format!(
                "edge {} {}\n",
                label,
                if self.twisted[e] { "-" } else { "+" }
            ));
        }
        out
    }
}

/// Parse the `.ribbon` format: `vertex <label>: <end tokens>` lines,
/// `edge <label> <+|->` lines, `#` comments. Edge declaration order is the
/// ground-set order of the induced delta-matroid.
pub fn parse_ribbon(text: &str) -> Result<RibbonGraph> {
    // first pass: edge declarations fix indices
    let mut edge_labels: Vec<String> = Vec::new();
    let mut twisted: Vec<bool> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if let Some(rest) = line.strip_prefix("edge ") {
            let fields: Vec<&str> = rest.split_whitespace().collect();
            if fields.len() != 2 || !matches!(fields[1], "+" | "-") {
                return Err(Error::Parse {
                    line: lineno + 1,
                    msg: "expected `edge <label> <+|->`".to_string(),
                });
            }
            if edge_labels.iter().any(|l| l == fields[0]) {
                return Err(Error::Parse {
                    line: lineno + 1,
                    msg: format!("duplicate edge `{}`", fields[0]),
                });
            }
            edge_labels.push(fields[0].to_string());
            twisted.push(fields[1] == "-");
        }
    }
    let mut vertex_labels: Vec<String> = Vec::new();
    let mut rotations: Vec<Vec<EndRef>> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() || line.starts_with("edge ") {
            continue;
        }
        let err = |msg: String| Error::Parse { line: lineno + 1, msg };
        let Some(rest) = line.strip_prefix("vertex ") else {
            return Err(err(format!("unknown line `{line}`")));
        };
        let (label, tokens) = rest
            .split_once(':')
            .ok_or_else(|| err("expected `vertex <label>: ...`".to_string()))?;
        let label = label.trim();
        if label.is_empty() {
            return Err(err("empty vertex label".to_string()));
        }
        if vertex_labels.iter().any(|l| l == label) {
            return Err(err(format!("duplicate vertex `{label}`")));
        }
        let mut rot = Vec::new();
        for tok in tokens.split_whitespace() {
            let (edge, end) = tok
                .rsplit_once(':')
                .ok_or_else(|| err(format!("bad token `{tok}`")))?;
            let end: u8 = match end {
                "0" => 0,
                "1" => 1,
                _ => return Err(err(format!("bad end index in `{tok}`"))),
            };
            let edge = edge_labels
                .iter()
                .position(|l| l == edge)
                .ok_or_else(|| err(format!("unknown edge `{edge}`")))?;
            rot.push(EndRef { edge, end });
        }
        vertex_labels.push(label.to_string());
        rotations.push(rot);
    }
    RibbonGraph::new(vertex_labels, edge_labels, twisted, rotations)
}

/// The one-vertex, three-loop fixture with rotation a b a c c b and all
/// edges untwisted: a and b interlace, c is nested inside b.
pub fn interlaced_loops_fixture() -> RibbonGraph {
    parse_ribbon(
        "vertex v: a:0 b:0 a:1 c:0 c:1 b:1\nedge a +\nedge b +\nedge c +\n",
    )
    .expect("fixture parses")
}

/// Plane theta graph: two vertices joined by three parallel untwisted edges
/// embedded without crossings, so quasi-trees are exactly spanning trees.
pub fn plane_theta_fixture() -> RibbonGraph {
    parse_ribbon(
        "vertex u: a:0 b:0 c:0\nvertex v: c:1 b:1 a:1\nedge a +\nedge b +\nedge c +\n",
    )
    .expect("fixture parses")
}

/// Plane triangle: three vertices in a 3-cycle, so the graphic delta-matroid
/// is the cycle matroid with the three 2-subsets as bases.
pub fn plane_triangle_fixture() -> RibbonGraph {
    parse_ribbon(
        "vertex u: a:0 c:1\nvertex v: b:0 a:1\nvertex w: c:0 b:1\nedge a +\nedge b +\nedge c +\n",
    )
    .expect("fixture parses")
}

/// Seeded random connected ribbon graph with at most `max_edges` edges.
pub fn random_ribbon<R: Rng>(rng: &mut R, max_edges: usize) -> RibbonGraph {
    let n_edges = rng.gen_range(1..=max_edges);
    let n_vertices = rng.gen_range(1..=n_edges.min(3));
    let mut ends: Vec<[usize; 2]> = Vec::new();
    for e in 0..n_edges {
        if e < n_vertices - 1 {
            // spanning-tree edge keeps the graph connected
            let parent = rng.gen_range(0..=e.min(n_vertices - 2));
            ends.push([e + 1, parent.min(n_vertices - 1)]);
        } else {
            ends.push([rng.gen_range(0..n_vertices), rng.gen_range(0..n_vertices)]);
        }
    }
    let twisted: Vec<bool> = (0..n_edges).map(|_| rng.gen_bool(0.5)).collect();
    let mut rotations: Vec<Vec<EndRef>> = vec![Vec::new(); n_vertices];
    for (e, vs) in ends.iter().enumerate() {
        for (end, &v) in vs.iter().enumerate() {
            rotations[v].push(EndRef { edge: e, end: end as u8 });
        }
    }
    for rot in &mut rotations {
        // Fisher-Yates with the seeded rng
        for i in (1..rot.len()).rev() {
            let j = rng.gen_range(0..=i);
            rot.swap(i, j);
        }
    }
    let vertex_labels: Vec<String> = (0..n_vertices).map(|v| format!("v{}", v + 1)).collect();
    let edge_labels: Vec<String> = (0..n_edges)
        .map(|e| {
            if e < 26 {
                ((b'a' + e as u8) as char).to_string()
            } else {
                format!("e{e}")
            }
        })
        .collect();
    RibbonGraph::new(vertex_labels, edge_labels, twisted, rotations)
        .expect("construction is connected by design")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_loop(twist: bool) -> RibbonGraph {
        RibbonGraph::new(
            vec!["v"],
            vec!["e"],
            vec![twist],
            vec![vec![EndRef { edge: 0, end: 0 }, EndRef { edge: 0, end: 1 }]],
        )
        .unwrap()
    }

    #[test]
    fn empty_subset_counts_vertices() {
        let g = plane_theta_fixture();
        assert_eq!(g.boundary_count(SubsetMask::empty()).unwrap(), 2);
        let f = interlaced_loops_fixture();
        assert_eq!(f.boundary_count(SubsetMask::empty()).unwrap(), 1);
    }

    #[test]
    fn loop_boundaries() {
        assert_eq!(single_loop(false).boundary_count(SubsetMask::singleton(0)).unwrap(), 2);
        assert_eq!(single_loop(true).boundary_count(SubsetMask::singleton(0)).unwrap(), 1);
    }

    #[test]
    fn figure_fixture_counts() {
        let g = interlaced_loops_fixture();
        let ground = g.edge_ground();
        let ab = ground.mask_of(["a", "b"]).unwrap();
        let ac = ground.mask_of(["a", "c"]).unwrap();
        assert_eq!(g.boundary_count(ab).unwrap(), 1);
        assert_eq!(g.boundary_count(ac).unwrap(), 3);
    }

    #[test]
    fn boundary_traces_cover_each_side_once() {
        let g = interlaced_loops_fixture();
        let a = g.edge_ground().mask_of(["a", "c"]).unwrap();
        let report = g.boundary(a).unwrap();
        let mut seen = std::collections::HashSet::new();
        for tr in &report.traces {
            for &(t, side) in tr {
                assert!(a.contains(t.edge));
                assert!(seen.insert((t.edge, t.end, matches!(side, EndSide::In))));
            }
        }
        assert_eq!(seen.len(), 2 * 2 * a.len());
    }

    #[test]
    fn theta_quasi_trees_are_spanning_trees() {
        let g = plane_theta_fixture();
        let dm = g.graphic_dm().unwrap();
        assert_eq!(
            dm.feasibles(),
            &[
                SubsetMask::singleton(0),
                SubsetMask::singleton(1),
                SubsetMask::singleton(2)
            ]
        );
        assert!(dm.is_matroid());
    }

    #[test]
    fn triangle_is_cycle_matroid() {
        let g = plane_triangle_fixture();
        let dm = g.graphic_dm().unwrap();
        let expected: Vec<SubsetMask> = vec![
            SubsetMask::from_indices([0, 1]),
            SubsetMask::from_indices([0, 2]),
            SubsetMask::from_indices([1, 2]),
        ];
        assert_eq!(dm.feasibles(), expected.as_slice());
    }

    #[test]
    fn twisted_loop_graphic_dm() {
        let dm = single_loop(true).graphic_dm().unwrap();
        assert_eq!(dm.feasibles(), &[SubsetMask::empty(), SubsetMask::singleton(0)]);
    }

    #[test]
    fn partial_dual_by_empty_set_is_identity() {
        for g in [
            interlaced_loops_fixture(),
            plane_theta_fixture(),
            single_loop(true),
        ] {
            let d = g.partial_dual(SubsetMask::empty()).unwrap();
            assert_eq!(d.rotations(), g.rotations());
            assert_eq!(d.twisted, g.twisted);
        }
    }

    #[test]
    fn partial_dual_involution_on_dm() {
        let g = interlaced_loops_fixture();
        let full = SubsetMask::full(3);
        let dd = g.partial_dual(full).unwrap().partial_dual(full).unwrap();
        assert_eq!(dd.graphic_dm().unwrap(), g.graphic_dm().unwrap());
    }

    #[test]
    fn twist_dual_equivalence_on_fixtures() {
        for g in [
            interlaced_loops_fixture(),
            plane_theta_fixture(),
            plane_triangle_fixture(),
            single_loop(false),
            single_loop(true),
        ] {
            let dm = g.graphic_dm().unwrap();
            for bits in 0..(1u64 << g.edge_count()) {
                let a = SubsetMask(bits);
                let dual_dm = g.partial_dual(a).unwrap().graphic_dm().unwrap();
                assert_eq!(dual_dm.feasibles(), dm.twist(a).unwrap().feasibles());
            }
        }
    }

    #[test]
    fn quasi_tree_duals_are_single_vertex() {
        let g = plane_triangle_fixture();
        let dm = g.graphic_dm().unwrap();
        for &q in dm.feasibles() {
            assert_eq!(g.partial_dual(q).unwrap().vertex_count(), 1);
        }
    }

    #[test]
    fn alternation_examples() {
        let abab = parse_ribbon(
            "vertex v: a:0 b:0 a:1 b:1\nedge a +\nedge b +\n",
        )
        .unwrap();
        assert!(abab.vertex_alternation_interlaced(0, 1).unwrap());

        let aabb = parse_ribbon(
            "vertex v: a:0 a:1 b:0 b:1\nedge a +\nedge b +\n",
        )
        .unwrap();
        assert!(!aabb.vertex_alternation_interlaced(0, 1).unwrap());

        let fig = interlaced_loops_fixture();
        assert!(fig.vertex_alternation_interlaced(0, 1).unwrap());
        assert!(!fig.vertex_alternation_interlaced(0, 2).unwrap());
        assert!(!fig.vertex_alternation_interlaced(1, 2).unwrap());

        let theta = plane_theta_fixture();
        assert!(matches!(
            theta.vertex_alternation_interlaced(0, 1),
            Err(Error::MultiVertex)
        ));
    }

    #[test]
    fn interlacement_check_on_fixtures() {
        let g = interlaced_loops_fixture();
        let dm = g.graphic_dm().unwrap();
        let ab = g.edge_ground().mask_of(["a", "b"]).unwrap();
        assert!(dm.is_feasible(ab));
        assert!(g.quasi_tree_interlacement_check(ab).unwrap());

        let theta = plane_theta_fixture();
        let tdm = theta.graphic_dm().unwrap();
        for &q in tdm.feasibles() {
            assert!(theta.quasi_tree_interlacement_check(q).unwrap());
        }
    }

    #[test]
    fn ribbon_format_round_trip() {
        let text = "vertex v: a:0 b:0 a:1 c:0 c:1 b:1\nedge a +\nedge b +\nedge c +\n";
        let g = parse_ribbon(text).unwrap();
        assert_eq!(g.to_ribbon_string(), text);

        assert!(parse_ribbon("vertex v: a:0\nedge a +\n").is_err());
        assert!(parse_ribbon("vertex v: a:0 a:1 a:1\nedge a +\n").is_err());
        assert!(parse_ribbon("vertex v: q:0\nedge a +\n").is_err());
        // disconnected: two vertices, loop on each... needs 2+ edges
        let disconnected = "vertex u: a:0 a:1\nvertex v: b:0 b:1\nedge a +\nedge b +\n";
        assert!(matches!(parse_ribbon(disconnected), Err(Error::DisconnectedRibbon)));
    }

    #[test]
    fn random_ribbons_are_valid_and_deterministic() {
        use rand::SeedableRng;
        let mut r1 = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut r2 = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let g1 = random_ribbon(&mut r1, 5);
            let g2 = random_ribbon(&mut r2, 5);
            assert_eq!(g1, g2);
            assert!(g1.edge_count() <= 5);
            // the graphic delta-matroid exists (connected, nonempty family)
            g1.graphic_dm().unwrap();
        }
    }
}
