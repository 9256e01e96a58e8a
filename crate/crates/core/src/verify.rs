//! Named property suites: exhaustive below a size threshold, seeded-random
//! above. Each suite reports case/failure counts and the first serialized
//! counterexample. The CLI `verify` command and the acceptance tests both
//! run these.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::activity::{build_tree, leaf_for, NodeKind};
use crate::dm::{family_satisfies_exchange, DeltaMatroid};
use crate::engines::{
    self, br_two, coloops_and_loops, interlace_two, transition_z0, transition_z0_leafsum,
    tutte_oracle, Method, Relation,
};
use crate::error::{Error, Result};
use crate::gen::{enumerate_matroids, enumerate_small, random_corpus, random_graph};
use crate::ground::{SubsetMask, TotalOrder};
use crate::interlace::{fundamental_circuit, fundamental_graph, interlace_set};
use crate::poly::LaurentHalfPoly;
use crate::ribbon::{interlaced_loops_fixture, plane_theta_fixture, random_ribbon};
use crate::Coeff;

type Poly = LaurentHalfPoly<Coeff>;

#[derive(Copy, Clone, Debug)]
pub struct SuiteOptions {
    /// Exhaustive threshold: all delta-matroids with at most this many
    /// elements (1..=4).
    pub size: usize,
    /// Run the exhaustive part only.
    pub exhaustive: bool,
    /// Number of random instances past the exhaustive threshold.
    pub trials: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { size: 3, exhaustive: false, trials: 50, seed: 1 }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: String,
    pub seed: u64,
    pub cases: usize,
    pub failures: usize,
    pub first_counterexample: Option<String>,
}

impl SuiteReport {
    fn new(name: &str, seed: u64) -> Self {
        SuiteReport {
            name: name.to_string(),
            seed,
            cases: 0,
            failures: 0,
            first_counterexample: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_counterexample.is_none() {
                self.first_counterexample = Some(describe());
            }
        }
    }
}

pub const SUITES: &[(&str, &str)] = &[
    ("transfeas", "direct, deletion-contraction, and activities evaluators agree"),
    ("basecases", "coloop/loop products equal (x+wy)^c (w+xy)^l"),
    ("orderinv", "activities output is identical under every total order"),
    ("twistdual", "graphic delta-matroid of a partial dual equals the twist"),
    ("quasidual", "partial dual over a quasi-tree has a single vertex"),
    ("ribbonchar", "boundary alternation matches delta-matroid interlacement"),
    ("ribbonloop", "singleton feasibility matches ribbon-loop orientability"),
    ("connectivity", "interlacement matches restricted-twist connectivity"),
    ("circuits", "interlace neighborhoods match fundamental circuits"),
    ("matdelt", "matroid activities match classical activities"),
    ("leafsum", "leaf formula sums to the transition polynomial"),
    ("treecover", "computation-tree cover and feasibility lemmas"),
    ("coreids", "leaf mask sizes match activity counts"),
    ("brchain", "two-variable form follows from the three-variable one"),
    ("interlacebr", "interlace polynomial matches the weighted substitution"),
    ("interlaceexp", "interlace polynomials match their activities expansions"),
    ("tuttered", "matroid reduction to the Tutte polynomial"),
    ("constructors", "adjacency delta-matroids validate; parity and fixtures"),
];

fn exhaustive_dms(max_n: usize) -> Vec<DeltaMatroid> {
    let mut out = Vec::new();
    for n in 1..=max_n.min(4) {
        out.extend(enumerate_small(n).expect("n is in range"));
    }
    out
}

fn corpus(opts: &SuiteOptions) -> Vec<DeltaMatroid> {
    let mut out = exhaustive_dms(opts.size);
    if !opts.exhaustive {
        out.extend(random_corpus(opts.seed, opts.trials, 5..=8));
    }
    out
}

/// Small-instance corpus for the polynomial relation suites: exhaustive up
/// to `size`, plus random instances kept at 5..=6 elements so the subset
/// sums stay fast.
fn relation_corpus(opts: &SuiteOptions) -> Vec<DeltaMatroid> {
    let mut out = exhaustive_dms(opts.size);
    if !opts.exhaustive {
        out.extend(random_corpus(opts.seed, opts.trials, 5..=6));
    }
    out
}

fn random_orders(rng: &mut ChaCha8Rng, n: usize, count: usize) -> Vec<TotalOrder> {
    if n <= 4 {
        return TotalOrder::all(n);
    }
    (0..count)
        .map(|_| {
            let mut ranks: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                let j = rng.gen_range(0..=i);
                ranks.swap(i, j);
            }
            TotalOrder::from_ranks(ranks).expect("permutation")
        })
        .collect()
}

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|(n, _)| *n).collect()
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<SuiteReport> {
    match name {
        "transfeas" => transfeas(opts),
        "basecases" => basecases(opts),
        "orderinv" => orderinv(opts),
        "twistdual" => twistdual(opts),
        "quasidual" => quasidual(opts),
        "ribbonchar" => ribbonchar(opts),
        "ribbonloop" => relation_suite("ribbonloop", Relation::RibbonLoopOrientability, opts),
        "connectivity" => relation_suite("connectivity", Relation::InterlacementConnectivity, opts),
        "circuits" => circuits(opts),
        "matdelt" => relation_suite("matdelt", Relation::MatroidActivities, opts),
        "leafsum" => leafsum(opts),
        "treecover" => treecover(opts),
        "coreids" => relation_suite("coreids", Relation::LeafAccounting, opts),
        "brchain" => poly_relation_suite("brchain", Relation::BrThreeToTwo, opts),
        "interlacebr" => poly_relation_suite("interlacebr", Relation::InterlaceBrBridge, opts),
        "interlaceexp" => interlaceexp(opts),
        "tuttered" => tuttered(opts),
        "constructors" => constructors(opts),
        other => Err(Error::UnknownSuite(other.to_string())),
    }
}

fn transfeas(opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("transfeas", opts.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for d in corpus(opts) {
        let n = d.ground_size();
        let direct: Poly = transition_z0(&d, Method::Direct, &TotalOrder::declaration(n))?;
        let orders = random_orders(&mut rng, n, 5);
        for order in &orders {
            let dc: Poly = transition_z0(&d, Method::DeletionContraction, order)?;
            let act: Poly = transition_z0(&d, Method::Activities, order)?;
            let ok = dc == direct && act == direct && act.is_polynomial();
            report.case(ok, || {
                format!(
                    "{}order: {:?}\ndirect:   {}\ndc:       {}\nactivity: {}",
                    d.to_dm_string(),
                    order.sorted_elements(),
                    direct,
                    dc,
                    act
                )
            });
        }
    }
    Ok(report)
}

fn basecases(opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("basecases", opts.seed);
    for c in 0..=3usize {
        for l in 0..=3usize {
            let d = coloops_and_loops(c, l);
            let n = c + l;
            let order = TotalOrder::declaration(n);
            let vars = engines::transition_z0_vars();
            let x_wy = Poly::var(&vars, 1)
                .add(&Poly::monomial(&vars, Coeff::from(1), &[(0, 2), (2, 2)]))?;
            let w_xy = Poly::var(&vars, 0)
                .add(&Poly::monomial(&vars, Coeff::from(1), &[(1, 2), (2, 2)]))?;
            let expect = x_wy.pow(c as i64)?.mul(&w_xy.pow(l as i64)?)?;
            for m in [Method::Direct, Method::DeletionContraction, Method::Activities] {
                let got: Poly = transition_z0(&d, m, &order)?;
                report.case(got == expect, || {
                    format!("c={c} l={l} method {m:?}: got {got}, want {expect}")
                });
            }
        }
    }
    Ok(report)
}

fn orderinv(opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("orderinv", opts.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for d in corpus(opts) {
        let n = d.ground_size();
        let orders = random_orders(&mut rng, n, 10);
        let reference: Poly = transition_z0(&d, Method::Activities, &TotalOrder::declaration(n))?;
        for order in &orders {
            let got: Poly = transition_z0(&d, Method::Activities, order)?;
            report.case(got == reference, || {
                format!(
                    "{}order {:?}: {} vs {}",
                    d.to_dm_string(),
                    order.sorted_elements(),
                    got,
                    reference
                )
            });
        }
    }
    Ok(report)
}

fn twistdual(opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("twistdual", opts.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.trials.max(1) {
        let g = random_ribbon(&mut rng, 5);
        let dm = g.graphic_dm()?;
        for bits in 0..(1u64 << g.edge_count()) {
            let a = SubsetMask(bits);
            let dual_dm = g.partial_dual(a)?.graphic_dm()?;
            let twisted = dm.twist(a)?;
            report.case(dual_dm.feasibles() == twisted.feasibles(), || {
                format!(
                    "ribbon:\n{}subset {}: dual family {:?}, twist family {:?}",
                    g.to_ribbon_string(),
                    g.edge_ground().set_string(a),
                    dual_dm,
                    twisted
                )
            });
        }
    }
    Ok(report)
}

fn quasidual(opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("quasidual", opts.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let fixture = interlaced_loops_fixture();
    let mut graphs = vec![fixture];
    for _ in 0..opts.trials.max(1) {
        graphs.push(random_ribbon(&mut rng, 5));
    }
    for g in &graphs {
        let dm = g.graphic_dm()?;
        for &q in dm.feasibles() {
            let dual = g.partial_dual(q)?;
            report.case(dual.vertex_count() == 1, || {
                format!(
                    "ribbon:\n{}quasi-tree {} gives {} vertices",
                    g.to_ribbon_string(),
                    g.edge_ground().set_string(q),
                    dual.vertex_count()
                )
            });
        }
    }
    Ok(report)
}

fn ribbonchar(opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("ribbonchar", opts.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut graphs = vec![interlaced_loops_fixture(), plane_theta_fixture()];
    for _ in 0..opts.trials.max(1) {
        graphs.push(random_ribbon(&mut rng, 5));
    }
    for g in &graphs {
        let dm = g.graphic_dm()?;
        for &q in dm.feasibles() {
            let ok = g.quasi_tree_interlacement_check(q)?;
            report.case(ok, || {
                format!(
                    "ribbon:\n{}quasi-tree {}",
                    g.to_ribbon_string(),
                    g.edge_ground().set_string(q)
                )
            });
        }
    }
    Ok(report)
}

/// Run an engine-level relation over the mixed corpus.
fn relation_suite(name: &str, rel: Relation, opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(name, opts.seed);
    for d in corpus(opts) {
        let ok = engines::verify_relation::<Coeff>(&d, rel)?;
        report.case(ok, || d.to_dm_string());
    }
    Ok(report)
}

/// Same, but on the smaller corpus used for the polynomial chains.
fn poly_relation_suite(name: &str, rel: Relation, opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(name, opts.seed);
    for d in relation_corpus(opts) {
        let ok = engines::verify_relation::<Coeff>(&d, rel)?;
        report.case(ok, || d.to_dm_string());
    }
    Ok(report)
}

fn circuits(opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("circuits", opts.seed);
    for n in 1..=opts.size.min(5).max(1) {
        for m in enumerate_matroids(n)? {
            for &basis in m.feasibles() {
                for a in 0..n {
                    if basis.contains(a) {
                        continue;
                    }
                    let circuit = fundamental_circuit(&m, basis, a)?;
                    let neighborhood = interlace_set(&m, basis, a)?;
                    let ok = neighborhood == circuit.without(a);
                    report.case(ok, || {
                        format!(
                            "{}basis {}, element {}: I = {:?}, C = {:?}",
                            m.to_dm_string(),
                            m.ground().set_string(basis),
                            m.ground().name(a),
                            neighborhood,
                            circuit
                        )
                    });
                }
            }
        }
    }
    Ok(report)
}

fn leafsum(opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("leafsum", opts.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for d in corpus(opts) {
        let n = d.ground_size();
        let direct: Poly = transition_z0(&d, Method::Direct, &TotalOrder::declaration(n))?;
        for order in random_orders(&mut rng, n, 3) {
            let sum: Poly = transition_z0_leafsum(&d, &order)?;
            report.case(sum == direct, || {
                format!("{}leaf sum {} vs direct {}", d.to_dm_string(), sum, direct)
            });
        }
    }
    Ok(report)
}

/// Computation-tree structure: node feasibility, unique leaf covers, the
/// active-orientable description of leaf ground sets, and nonsingularity of
/// interlaced pairs in covering nodes.
fn treecover(opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("treecover", opts.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for d in corpus(opts) {
        let n = d.ground_size();
        if n > 6 {
            continue; // node feasibility scans are exponential in n
        }
        for order in random_orders(&mut rng, n, 2) {
            let tree = build_tree(&d, &order);

            // leaves biject with feasible sets
            report.case(tree.leaf_count() == d.feasibles().len(), || {
                format!(
                    "{}order {:?}: {} leaves vs {} feasibles",
                    d.to_dm_string(),
                    order.sorted_elements(),
                    tree.leaf_count(),
                    d.feasibles().len()
                )
            });

            // every subset is covered by exactly one leaf
            for subset in d.ground().subsets() {
                let covering: Vec<usize> = tree
                    .nodes()
                    .iter()
                    .enumerate()
                    .filter(|(_, node)| {
                        matches!(node.kind, NodeKind::Leaf(_)) && {
                            let elems = node_ground_mask(&d, node);
                            node.contracted.is_subset_of(subset)
                                && subset.is_subset_of(node.contracted | elems)
                        }
                    })
                    .map(|(i, _)| i)
                    .collect();
                report.case(covering.len() == 1, || {
                    format!(
                        "{}subset {} covered by {} leaves",
                        d.to_dm_string(),
                        d.ground().set_string(subset),
                        covering.len()
                    )
                });
            }

            for node in tree.nodes() {
                let elems = node_ground_mask(&d, node);
                // feasibility transfer between node minors and the root
                for sub in node.dm.ground().subsets() {
                    let lifted = lift_mask(&d, node, sub);
                    let ok = node.dm.is_feasible(sub) == d.is_feasible(lifted | node.contracted);
                    report.case(ok, || {
                        format!(
                            "{}node c={:?} d={:?}: set {:?}",
                            d.to_dm_string(),
                            node.contracted,
                            node.deleted,
                            sub
                        )
                    });
                }
                // interlaced pairs with an orientable member are nonsingular
                // in every covering node
                for &f in d.feasibles() {
                    if !(node.contracted.is_subset_of(f) && f.is_subset_of(node.contracted | elems))
                    {
                        continue;
                    }
                    let graph = fundamental_graph(&d, f)?;
                    for a in elems.iter() {
                        for b in elems.iter() {
                            if b <= a || !graph.adjacent(a, b) {
                                continue;
                            }
                            if graph.is_nonorientable(a) && graph.is_nonorientable(b) {
                                continue;
                            }
                            let la = node.dm.ground().index_of(d.ground().name(a)).unwrap();
                            let lb = node.dm.ground().index_of(d.ground().name(b)).unwrap();
                            let ok = node.dm.nonsingular_mask().contains(la)
                                && node.dm.nonsingular_mask().contains(lb);
                            report.case(ok, || {
                                format!(
                                    "{}pair {} {} in node c={:?}",
                                    d.to_dm_string(),
                                    d.ground().name(a),
                                    d.ground().name(b),
                                    node.contracted
                                )
                            });
                        }
                    }
                }
            }

            // E(L(F)) is exactly the set of active orientable points
            for &f in d.feasibles() {
                let stats = leaf_for(&d, &order, f)?;
                let leaf_elems = stats.coloops | stats.loops;
                let graph = fundamental_graph(&d, f)?;
                let mut active_orientable = SubsetMask::empty();
                for a in 0..n {
                    let c = crate::activity::classify_with(&graph, &order, a);
                    if c.active && c.orientable {
                        active_orientable = active_orientable.with(a);
                    }
                }
                report.case(leaf_elems == active_orientable, || {
                    format!(
                        "{}F={}: leaf ground {:?} vs active orientable {:?}",
                        d.to_dm_string(),
                        d.ground().set_string(f),
                        leaf_elems,
                        active_orientable
                    )
                });
            }
        }
    }
    Ok(report)
}

fn node_ground_mask(original: &DeltaMatroid, node: &crate::activity::TreeNode) -> SubsetMask {
    let mut m = SubsetMask::empty();
    for name in node.dm.ground().names() {
        m = m.with(original.ground().index_of(name).expect("minor label"));
    }
    m
}

fn lift_mask(
    original: &DeltaMatroid,
    node: &crate::activity::TreeNode,
    local: SubsetMask,
) -> SubsetMask {
    let mut m = SubsetMask::empty();
    for i in local.iter() {
        m = m.with(
            original
                .ground()
                .index_of(node.dm.ground().name(i))
                .expect("minor label"),
        );
    }
    m
}

fn interlaceexp(opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("interlaceexp", opts.seed);
    for d in relation_corpus(opts) {
        let ok = engines::verify_relation::<Coeff>(&d, Relation::InterlaceExpansion)?
            && engines::verify_relation::<Coeff>(&d, Relation::InterlaceOneExpansion)?;
        report.case(ok, || d.to_dm_string());
    }
    Ok(report)
}

fn tuttered(opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("tuttered", opts.seed);
    let mut matroids: Vec<DeltaMatroid> = exhaustive_dms(opts.size.min(4))
        .into_iter()
        .filter(|d| d.is_matroid())
        .collect();
    matroids.push(
        DeltaMatroid::from_labels(
            ["a", "b", "c"],
            [vec!["a", "b"], vec!["a", "c"], vec!["b", "c"]],
        )
        .expect("U_{2,3}"),
    );
    matroids.push(
        crate::ribbon::plane_triangle_fixture()
            .graphic_dm()
            .expect("triangle"),
    );
    for m in &matroids {
        let t: Poly = tutte_oracle(m)?;
        let direct: Poly = br_two(m, Method::Direct)?;
        let act: Poly = br_two(m, Method::Activities)?;
        report.case(t == direct && t == act, || {
            format!("{}tutte {} direct {} activities {}", m.to_dm_string(), t, direct, act)
        });
    }
    Ok(report)
}

fn constructors(opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("constructors", opts.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.trials.max(1) {
        let n = rng.gen_range(1..=10usize);
        let g = random_graph(&mut rng, n);
        let dm = g.adjacency_dm();
        let valid = family_satisfies_exchange(dm.ground(), dm.feasibles())?;
        report.case(valid, || g.to_graph_string());
        let loopless = (0..n).all(|v| !g.has_loop(v));
        if loopless {
            let even = dm.feasibles().iter().all(|f| f.len() % 2 == 0);
            report.case(even, || {
                format!("odd feasible set in loopless graph\n{}", g.to_graph_string())
            });
        }
    }
    // plane theta: quasi-trees are the three spanning trees, and the
    // two-variable form matches the Tutte polynomial of that matroid
    let theta = plane_theta_fixture();
    let dm = theta.graphic_dm()?;
    report.case(dm.is_matroid() && dm.feasibles().len() == 3, || {
        format!("theta delta-matroid {:?}", dm)
    });
    let t: Poly = tutte_oracle(&dm)?;
    let b: Poly = br_two(&dm, Method::Direct)?;
    report.case(t == b, || format!("theta: tutte {} vs br {}", t, b));
    // interlace polynomial specialization sanity on the same fixture
    let q2: Poly = interlace_two(&dm, Method::Direct)?;
    let q2b: Poly = interlace_two(&dm, Method::ViaRelation)?;
    report.case(q2 == q2b, || format!("theta interlace {} vs {}", q2, q2b));
    Ok(report)
}
