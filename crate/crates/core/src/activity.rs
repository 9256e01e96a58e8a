//! Order-based activities: point classification, the binary computation tree
//! of minors, leaf covers, and the leaf accounting identities.

use crate::dm::DeltaMatroid;
use crate::error::{Error, Result};
use crate::ground::{SubsetMask, TotalOrder};
use crate::interlace::{fundamental_graph, InterlaceGraph};

/// Classification of a point relative to a feasible set and a total order.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct PointClass {
    /// a ∈ F
    pub internal: bool,
    /// no lower-ordered point is interlaced with a
    pub active: bool,
    /// {a} is not feasible in D*F
    pub orientable: bool,
}

/// Classify one point. `internal` iff the point is in F; `active` iff every
/// interlaced point is higher in the order; `orientable` per the twist rule.
pub fn classify_point(
    d: &DeltaMatroid,
    f: SubsetMask,
    order: &TotalOrder,
    a: usize,
) -> Result<PointClass> {
    let graph = fundamental_graph(d, f)?;
    Ok(classify_with(&graph, order, a))
}

/// Same as [`classify_point`] against a prebuilt fundamental graph.
pub fn classify_with(graph: &InterlaceGraph, order: &TotalOrder, a: usize) -> PointClass {
    let active = graph.neighbors(a).iter().all(|b| order.before(a, b));
    PointClass {
        internal: graph.basis().contains(a),
        active,
        orientable: !graph.is_nonorientable(a),
    }
}

/// (i, j): counts of internal resp. external points that are both active
/// and orientable with respect to F.
pub fn activity_counts(
    d: &DeltaMatroid,
    f: SubsetMask,
    order: &TotalOrder,
) -> Result<(usize, usize)> {
    let graph = fundamental_graph(d, f)?;
    Ok(activity_counts_with(&graph, order))
}

pub fn activity_counts_with(graph: &InterlaceGraph, order: &TotalOrder) -> (usize, usize) {
    let mut i = 0;
    let mut j = 0;
    for a in 0..graph.ground().len() {
        let c = classify_with(graph, order, a);
        if c.active && c.orientable {
            if c.internal {
                i += 1;
            } else {
                j += 1;
            }
        }
    }
    (i, j)
}

/// Per-leaf bookkeeping: the four masks partition the original ground set.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct LeafStats {
    pub contracted: SubsetMask,
    pub deleted: SubsetMask,
    pub coloops: SubsetMask,
    pub loops: SubsetMask,
}

impl LeafStats {
    /// The unique feasible set covered by this leaf: coloops ∪ contracted.
    pub fn feasible(&self) -> SubsetMask {
        self.coloops | self.contracted
    }
}

#[derive(Clone, Debug)]
pub enum NodeKind {
    /// Pivot (as an index into the original ground set) and child node ids,
    /// contract child first.
    Internal {
        pivot: usize,
        contract_child: usize,
        delete_child: usize,
    },
    Leaf(LeafStats),
}

#[derive(Clone, Debug)]
pub struct TreeNode {
    pub dm: DeltaMatroid,
    /// Elements contracted on the path from the root, in original indices.
    pub contracted: SubsetMask,
    /// Elements deleted on the path from the root, in original indices.
    pub deleted: SubsetMask,
    pub kind: NodeKind,
}

/// The binary minor tree: each non-leaf splits on its highest-ordered
/// nonsingular point; leaves have only singular points. Minors are
/// materialized eagerly; completed trees are immutable.
#[derive(Clone, Debug)]
pub struct ComputationTree {
    nodes: Vec<TreeNode>,
    root: DeltaMatroid,
}

impl ComputationTree {
    pub fn root_dm(&self) -> &DeltaMatroid {
        &self.root
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn root(&self) -> &TreeNode {
        &self.nodes[0]
    }

    pub fn leaves(&self) -> impl Iterator<Item = &LeafStats> {
        self.nodes.iter().filter_map(|n| match &n.kind {
            NodeKind::Leaf(stats) => Some(stats),
            NodeKind::Internal { .. } => None,
        })
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves().count()
    }
}

/// The highest-ordered nonsingular point of `dm`, reported as an index into
/// the ORIGINAL ground set; `None` when every point is singular.
fn highest_nonsingular(dm: &DeltaMatroid, original: &DeltaMatroid, order: &TotalOrder) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None; // (local idx, original idx)
    for local in dm.nonsingular_mask().iter() {
        let orig = original
            .ground()
            .index_of(dm.ground().name(local))
            .expect("minor labels come from the original ground");
        if best.map_or(true, |(_, b)| order.before(b, orig)) {
            best = Some((local, orig));
        }
    }
    best
}

fn leaf_stats(dm: &DeltaMatroid, original: &DeltaMatroid, contracted: SubsetMask, deleted: SubsetMask) -> LeafStats {
    let mut coloops = SubsetMask::empty();
    let mut loops = SubsetMask::empty();
    for local in 0..dm.ground_size() {
        let orig = original
            .ground()
            .index_of(dm.ground().name(local))
            .expect("minor labels come from the original ground");
        if dm.is_coloop(local) {
            coloops = coloops.with(orig);
        } else {
            debug_assert!(dm.is_loop(local));
            loops = loops.with(orig);
        }
    }
    LeafStats { contracted, deleted, coloops, loops }
}

/// Build the full computation tree for `d` under `order`.
pub fn build_tree(d: &DeltaMatroid, order: &TotalOrder) -> ComputationTree {
    let mut nodes = Vec::new();
    build_rec(d, d, SubsetMask::empty(), SubsetMask::empty(), order, &mut nodes);
    ComputationTree { nodes, root: d.clone() }
}

fn build_rec(
    original: &DeltaMatroid,
    dm: &DeltaMatroid,
    contracted: SubsetMask,
    deleted: SubsetMask,
    order: &TotalOrder,
    nodes: &mut Vec<TreeNode>,
) -> usize {
    let id = nodes.len();
    match highest_nonsingular(dm, original, order) {
        None => {
            let stats = leaf_stats(dm, original, contracted, deleted);
            nodes.push(TreeNode {
                dm: dm.clone(),
                contracted,
                deleted,
                kind: NodeKind::Leaf(stats),
            });
        }
        Some((local, orig)) => {
            nodes.push(TreeNode {
                dm: dm.clone(),
                contracted,
                deleted,
                kind: NodeKind::Internal { pivot: orig, contract_child: 0, delete_child: 0 },
            });
            let contract_dm = dm
                .minor(SubsetMask::singleton(local), SubsetMask::empty())
                .expect("pivot is a valid element");
            let cc = build_rec(original, &contract_dm, contracted.with(orig), deleted, order, nodes);
            let delete_dm = dm
                .minor(SubsetMask::empty(), SubsetMask::singleton(local))
                .expect("pivot is a valid element");
            let dc = build_rec(original, &delete_dm, contracted, deleted.with(orig), order, nodes);
            if let NodeKind::Internal { contract_child, delete_child, .. } = &mut nodes[id].kind {
                *contract_child = cc;
                *delete_child = dc;
            }
        }
    }
    id
}

/// Walk root-to-leaf for an arbitrary subset without materializing the tree:
/// at each pivot, descend into the contract child iff the pivot is in the
/// subset. Returns the stats of the unique covering leaf.
pub fn cover_walk(d: &DeltaMatroid, order: &TotalOrder, subset: SubsetMask) -> Result<LeafStats> {
    d.ground().check_mask(subset)?;
    let mut cur = d.clone();
    let mut contracted = SubsetMask::empty();
    let mut deleted = SubsetMask::empty();
    loop {
        match highest_nonsingular(&cur, d, order) {
            None => return Ok(leaf_stats(&cur, d, contracted, deleted)),
            Some((local, orig)) => {
                if subset.contains(orig) {
                    cur = cur.minor(SubsetMask::singleton(local), SubsetMask::empty())?;
                    contracted = contracted.with(orig);
                } else {
                    cur = cur.minor(SubsetMask::empty(), SubsetMask::singleton(local))?;
                    deleted = deleted.with(orig);
                }
            }
        }
    }
}

/// The leaf covering a feasible set (errors when `f` is not feasible).
pub fn leaf_for(d: &DeltaMatroid, order: &TotalOrder, f: SubsetMask) -> Result<LeafStats> {
    if !d.is_feasible(f) {
        return Err(Error::NotFeasible(d.ground().set_string(f)));
    }
    let stats = cover_walk(d, order, f)?;
    debug_assert_eq!(stats.feasible(), f);
    Ok(stats)
}

/// Leaf accounting identities, for every feasible F:
/// |L_co| = i(F), |L_lo| = j(F), |L_c| + |L_co| = |F|,
/// |L_d| = |E| - |F| - j(F).
pub fn check_core_identities(d: &DeltaMatroid, order: &TotalOrder) -> Result<bool> {
    let n = d.ground_size();
    for &f in d.feasibles() {
        let (i, j) = activity_counts(d, f, order)?;
        let stats = leaf_for(d, order, f)?;
        if stats.coloops.len() != i
            || stats.loops.len() != j
            || stats.contracted.len() + stats.coloops.len() != f.len()
            || stats.deleted.len() != n - f.len() - j
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Indented text rendering of the computation tree. Each node prints its
/// minor as `(ground,{family})` with sets written without braces or commas
/// and the family sorted largest-first; child edges are annotated `/x`
/// (contract) and `\x` (delete), contract child first.
pub fn render_tree(tree: &ComputationTree) -> String {
    let mut out = String::new();
    render_node(tree, 0, 0, None, &mut out);
    out
}

fn node_label(dm: &DeltaMatroid) -> String {
    let g = dm.ground();
    let mut sets: Vec<SubsetMask> = dm.feasibles().to_vec();
    sets.sort_by_key(|m| (std::cmp::Reverse(m.len()), m.bits()));
    let parts: Vec<String> = sets.iter().map(|&m| g.set_string(m)).collect();
    format!("({},{{{}}})", g.set_string(g.full_mask()), parts.join(","))
}

fn render_node(
    tree: &ComputationTree,
    id: usize,
    depth: usize,
    edge: Option<String>,
    out: &mut String,
) {
    let node = &tree.nodes[id];
    for _ in 0..depth {
        out.push_str("  ");
    }
    if let Some(e) = edge {
        out.push_str(&e);
        out.push(' ');
    }
    out.push_str(&node_label(&node.dm));
    out.push('\n');
    if let NodeKind::Internal { pivot, contract_child, delete_child } = &node.kind {
        let name = tree.root.ground().name(*pivot).to_string();
        render_node(tree, *contract_child, depth + 1, Some(format!("/{name}")), out);
        render_node(tree, *delete_child, depth + 1, Some(format!("\\{name}")), out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::GroundSet;

    fn figure_dm() -> DeltaMatroid {
        let ground = GroundSet::alpha(3);
        let feasibles: Vec<SubsetMask> = ground
            .subsets()
            .filter(|&m| m != SubsetMask::singleton(0))
            .collect();
        DeltaMatroid::new(ground, feasibles).unwrap()
    }

    #[test]
    fn classify_figure_points() {
        let d = figure_dm();
        let order = TotalOrder::declaration(3);
        let e = SubsetMask::empty();
        let a = classify_point(&d, e, &order, 0).unwrap();
        assert_eq!(a, PointClass { internal: false, active: true, orientable: true });
        assert!(!classify_point(&d, e, &order, 1).unwrap().active);
        assert!(!classify_point(&d, e, &order, 2).unwrap().active);
    }

    #[test]
    fn classify_singleton_internal() {
        let d = DeltaMatroid::from_labels(["a"], [vec![], vec!["a"]]).unwrap();
        let order = TotalOrder::declaration(1);
        let c = classify_point(&d, SubsetMask::singleton(0), &order, 0).unwrap();
        assert!(c.internal);
        assert!(c.active);
    }

    #[test]
    fn activity_count_examples() {
        let d = figure_dm();
        let order = TotalOrder::declaration(3);
        assert_eq!(activity_counts(&d, SubsetMask::empty(), &order).unwrap(), (0, 1));
        assert_eq!(
            activity_counts(&d, SubsetMask::from_indices([1, 2]), &order).unwrap(),
            (0, 0)
        );

        let u12 = DeltaMatroid::from_labels(["a", "b"], [vec!["a"], vec!["b"]]).unwrap();
        let order2 = TotalOrder::declaration(2);
        assert_eq!(
            activity_counts(&u12, SubsetMask::singleton(0), &order2).unwrap(),
            (1, 0)
        );
    }

    #[test]
    fn tree_leaf_count_matches_family() {
        let d = figure_dm();
        for order in TotalOrder::all(3) {
            let tree = build_tree(&d, &order);
            assert_eq!(tree.leaf_count(), d.feasibles().len());
        }
    }

    #[test]
    fn single_coloop_tree_is_one_leaf() {
        let d = DeltaMatroid::from_labels(["a"], [vec!["a"]]).unwrap();
        let tree = build_tree(&d, &TotalOrder::declaration(1));
        assert_eq!(tree.nodes().len(), 1);
        let stats = tree.leaves().next().unwrap();
        assert_eq!(stats.coloops, SubsetMask::singleton(0));
        assert!(stats.contracted.is_empty());
    }

    #[test]
    fn leaf_walk_examples() {
        let d = figure_dm();
        let order = TotalOrder::declaration(3);

        let bc = SubsetMask::from_indices([1, 2]);
        let stats = leaf_for(&d, &order, bc).unwrap();
        assert_eq!(stats.contracted, bc);
        assert_eq!(stats.deleted, SubsetMask::singleton(0));
        assert!(stats.coloops.is_empty());
        assert!(stats.loops.is_empty());

        let stats = leaf_for(&d, &order, SubsetMask::empty()).unwrap();
        assert_eq!(stats.deleted, SubsetMask::from_indices([1, 2]));
        assert_eq!(stats.loops, SubsetMask::singleton(0));
        assert!(stats.contracted.is_empty());
        assert!(stats.coloops.is_empty());

        assert!(leaf_for(&d, &order, SubsetMask::singleton(0)).is_err());

        // coloop-only delta-matroid: everything is a coloop
        let co3 = DeltaMatroid::from_labels(["a", "b", "c"], [vec!["a", "b", "c"]]).unwrap();
        let stats = leaf_for(&co3, &order, SubsetMask::full(3)).unwrap();
        assert_eq!(stats.coloops, SubsetMask::full(3));
        assert!(stats.contracted.is_empty() && stats.deleted.is_empty() && stats.loops.is_empty());
    }

    #[test]
    fn core_identities_hold() {
        let d = figure_dm();
        for order in TotalOrder::all(3) {
            assert!(check_core_identities(&d, &order).unwrap());
        }
        let mix = DeltaMatroid::from_labels(["a"], [vec![]])
            .unwrap()
            .direct_sum(&DeltaMatroid::from_labels(["b"], [vec!["b"]]).unwrap())
            .unwrap();
        assert!(check_core_identities(&mix, &TotalOrder::declaration(2)).unwrap());
    }

    #[test]
    fn figure_tree_rendering() {
        let d = figure_dm();
        let tree = build_tree(&d, &TotalOrder::declaration(3));
        let expect = "\
(abc,{abc,ab,ac,bc,b,c,∅})
  /c (ab,{ab,a,b,∅})
    /b (a,{a,∅})
      /a (∅,{∅})
      \\a (∅,{∅})
    \\b (a,{a,∅})
      /a (∅,{∅})
      \\a (∅,{∅})
  \\c (ab,{ab,b,∅})
    /b (a,{a,∅})
      /a (∅,{∅})
      \\a (∅,{∅})
    \\b (a,{∅})
";
        assert_eq!(render_tree(&tree), expect);
    }

    #[test]
    fn pivots_are_nonsingular() {
        let d = figure_dm();
        for order in TotalOrder::all(3) {
            let tree = build_tree(&d, &order);
            for node in tree.nodes() {
                if let NodeKind::Internal { pivot, .. } = node.kind {
                    let local = node.dm.ground().index_of(d.ground().name(pivot)).unwrap();
                    assert!(node.dm.nonsingular_mask().contains(local));
                }
            }
        }
    }
}
