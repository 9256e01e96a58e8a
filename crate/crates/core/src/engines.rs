//! Polynomial invariants of delta-matroids. Every invariant is computed by
//! each method the theory provides (direct subset sums, deletion-contraction
//! with memoization, activities expansions, and substitution chains), and
//! the methods must agree exactly.

use std::collections::HashMap;

use crate::activity::{activity_counts_with, build_tree, ComputationTree, NodeKind};
use crate::dm::DeltaMatroid;
use crate::error::{Error, Result};
use crate::ground::{GroundSet, SubsetMask, TotalOrder};
use crate::interlace::{fundamental_circuit, fundamental_graph};
use crate::poly::{Coefficient, LaurentHalfPoly, MonomialImage, VarList};

/// Which evaluator to run. Each operation supports a subset; the theorems
/// assert that all supported evaluators produce the same polynomial.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Method {
    Direct,
    DeletionContraction,
    Activities,
    ViaRelation,
}

impl Method {
    pub fn parse(s: &str) -> Result<Method> {
        match s {
            "direct" => Ok(Method::Direct),
            "deletion-contraction" | "dc" => Ok(Method::DeletionContraction),
            "activities" => Ok(Method::Activities),
            "via-relation" => Ok(Method::ViaRelation),
            other => Err(Error::UnsupportedMethod(other.to_string())),
        }
    }
}

pub fn transition_vars() -> VarList {
    VarList::new(["w", "x", "z", "y"])
}

pub fn transition_z0_vars() -> VarList {
    VarList::new(["w", "x", "y"])
}

pub fn interlace2_vars() -> VarList {
    VarList::new(["x", "y"])
}

pub fn interlace1_vars() -> VarList {
    VarList::new(["y"])
}

/// Three-variable form lives in [s, y, z] with s standing for x-1.
pub fn br3_vars() -> VarList {
    VarList::new(["s", "y", "z"])
}

/// Two-variable forms live in shifted variables s = x-1, t = y-1.
pub fn br2_vars() -> VarList {
    VarList::new(["s", "t"])
}

fn unsupported(m: Method) -> Error {
    Error::UnsupportedMethod(format!("{m:?}"))
}

/// Full transition polynomial: the sum over ordered 3-partitions (A,B,C) of
/// w^|A| x^|B| z^|C| y^d(B), where d(B) is the minimum feasible size of the
/// twist by B. Capped at 12 elements (3^n partitions).
pub fn transition_full<C: Coefficient>(d: &DeltaMatroid) -> Result<LaurentHalfPoly<C>> {
    let n = d.ground_size();
    if n > 12 {
        return Err(Error::CapExceeded { what: "3-partition sum", limit: 12, got: n });
    }
    let vars = transition_vars();
    let mut dist = HashMap::new();
    let mut total = LaurentHalfPoly::zero(&vars);
    // trit i: 0 -> A, 1 -> B, 2 -> C
    let mut assign = vec![0u8; n];
    loop {
        let mut b = SubsetMask::empty();
        let (mut na, mut nb, mut nc) = (0i32, 0i32, 0i32);
        for (i, &t) in assign.iter().enumerate() {
            match t {
                0 => na += 1,
                1 => {
                    nb += 1;
                    b = b.with(i);
                }
                _ => nc += 1,
            }
        }
        let dy = *dist
            .entry(b)
            .or_insert_with(|| d.distance(b).expect("mask is valid"));
        total = total.add(&LaurentHalfPoly::monomial(
            &vars,
            C::one(),
            &[(0, 2 * na), (1, 2 * nb), (2, 2 * nc), (3, 2 * dy as i32)],
        ))?;
        // advance the base-3 counter
        let mut i = 0;
        loop {
            if i == n {
                return Ok(total);
            }
            assign[i] += 1;
            if assign[i] < 3 {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
    }
}

/// The z = 0 transition polynomial in [w, x, y].
pub fn transition_z0<C: Coefficient>(
    d: &DeltaMatroid,
    method: Method,
    order: &TotalOrder,
) -> Result<LaurentHalfPoly<C>> {
    match method {
        Method::Direct => transition_z0_direct(d),
        Method::DeletionContraction => transition_z0_dc(d, order),
        Method::Activities => transition_z0_activities(d, order),
        other => Err(unsupported(other)),
    }
}

fn transition_z0_direct<C: Coefficient>(d: &DeltaMatroid) -> Result<LaurentHalfPoly<C>> {
    let n = d.ground_size();
    if n > 20 {
        return Err(Error::CapExceeded { what: "subset sum", limit: 20, got: n });
    }
    let vars = transition_z0_vars();
    let mut total = LaurentHalfPoly::zero(&vars);
    for b in d.ground().subsets() {
        let dy = d.distance(b)? as i32;
        total = total.add(&LaurentHalfPoly::monomial(
            &vars,
            C::one(),
            &[(0, 2 * (n - b.len()) as i32), (1, 2 * b.len() as i32), (2, 2 * dy)],
        ))?;
    }
    Ok(total)
}

/// Base case: every point singular, c coloops and l loops give
/// (x + wy)^c (w + xy)^l.
fn singular_base<C: Coefficient>(vars: &VarList, coloops: usize, loops: usize) -> LaurentHalfPoly<C> {
    let x_plus_wy = LaurentHalfPoly::var(vars, 1)
        .add(&LaurentHalfPoly::monomial(vars, C::one(), &[(0, 2), (2, 2)]))
        .expect("same vars");
    let w_plus_xy = LaurentHalfPoly::var(vars, 0)
        .add(&LaurentHalfPoly::monomial(vars, C::one(), &[(1, 2), (2, 2)]))
        .expect("same vars");
    x_plus_wy
        .pow(coloops as i64)
        .and_then(|p| Ok(p.mul(&w_plus_xy.pow(loops as i64)?)?))
        .expect("exact arithmetic")
}

/// Recursion on the highest-ordered nonsingular point, memoized on the
/// canonical minor. No isomorphism reduction.
fn transition_z0_dc<C: Coefficient>(
    d: &DeltaMatroid,
    order: &TotalOrder,
) -> Result<LaurentHalfPoly<C>> {
    let vars = transition_z0_vars();
    let mut memo: HashMap<DeltaMatroid, LaurentHalfPoly<C>> = HashMap::new();
    fn rec<C: Coefficient>(
        dm: &DeltaMatroid,
        original: &GroundSet,
        order: &TotalOrder,
        vars: &VarList,
        memo: &mut HashMap<DeltaMatroid, LaurentHalfPoly<C>>,
    ) -> Result<LaurentHalfPoly<C>> {
        if let Some(p) = memo.get(dm) {
            return Ok(p.clone());
        }
        let pivot = dm
            .nonsingular_mask()
            .iter()
            .max_by_key(|&local| {
                order.rank(
                    original
                        .index_of(dm.ground().name(local))
                        .expect("minor labels come from the original ground"),
                )
            });
        let poly = match pivot {
            None => {
                let (lo, co) = dm.singular_points();
                singular_base(vars, co.len(), lo.len())
            }
            Some(local) => {
                let deleted = dm.minor(SubsetMask::empty(), SubsetMask::singleton(local))?;
                let contracted = dm.minor(SubsetMask::singleton(local), SubsetMask::empty())?;
                let qd = rec(&deleted, original, order, vars, memo)?;
                let qc = rec(&contracted, original, order, vars, memo)?;
                qd.mul_monomial(&[(0, 2)]).add(&qc.mul_monomial(&[(1, 2)]))?
            }
        };
        memo.insert(dm.clone(), poly.clone());
        Ok(poly)
    }
    rec(d, d.ground(), order, &vars, &mut memo)
}

/// Feasible-set expansion:
/// sum over F of w^(|E|-|F|) x^|F| (1 + (w/x)y)^i(F) (1 + (x/w)y)^j(F).
fn transition_z0_activities<C: Coefficient>(
    d: &DeltaMatroid,
    order: &TotalOrder,
) -> Result<LaurentHalfPoly<C>> {
    let vars = transition_z0_vars();
    let n = d.ground_size() as i32;
    let one = LaurentHalfPoly::one(&vars);
    let wxy = LaurentHalfPoly::monomial(&vars, C::one(), &[(0, 2), (1, -2), (2, 2)]);
    let xwy = LaurentHalfPoly::monomial(&vars, C::one(), &[(0, -2), (1, 2), (2, 2)]);
    let int_factor = one.add(&wxy)?;
    let ext_factor = one.add(&xwy)?;
    let mut total = LaurentHalfPoly::zero(&vars);
    for &f in d.feasibles() {
        let graph = fundamental_graph(d, f)?;
        let (i, j) = activity_counts_with(&graph, order);
        let term = LaurentHalfPoly::monomial(
            &vars,
            C::one(),
            &[(0, 2 * (n - f.len() as i32)), (1, 2 * f.len() as i32)],
        )
        .mul(&int_factor.pow(i as i64)?)?
        .mul(&ext_factor.pow(j as i64)?)?;
        total = total.add(&term)?;
    }
    Ok(total)
}

/// Evaluate the transition polynomial by summing the leaf formula
/// w^|L_d| x^|L_c| (x + wy)^|L_co| (w + xy)^|L_lo| over the computation
/// tree; used as yet another independently checkable route.
pub fn transition_z0_leafsum<C: Coefficient>(
    d: &DeltaMatroid,
    order: &TotalOrder,
) -> Result<LaurentHalfPoly<C>> {
    Ok(leafsum_from_tree(&build_tree(d, order)))
}

pub fn leafsum_from_tree<C: Coefficient>(tree: &ComputationTree) -> LaurentHalfPoly<C> {
    let vars = transition_z0_vars();
    let mut total = LaurentHalfPoly::zero(&vars);
    for stats in tree.leaves() {
        let base: LaurentHalfPoly<C> =
            singular_base(&vars, stats.coloops.len(), stats.loops.len());
        let term = base.mul_monomial(&[
            (0, 2 * stats.deleted.len() as i32),
            (1, 2 * stats.contracted.len() as i32),
        ]);
        total = total.add(&term).expect("same vars");
    }
    total
}

/// Two-variable interlace polynomial in [x, y].
pub fn interlace_two<C: Coefficient>(
    d: &DeltaMatroid,
    method: Method,
) -> Result<LaurentHalfPoly<C>> {
    let vars = interlace2_vars();
    match method {
        Method::Direct => {
            let n = d.ground_size();
            if n > 20 {
                return Err(Error::CapExceeded { what: "subset sum", limit: 20, got: n });
            }
            let mut total = LaurentHalfPoly::zero(&vars);
            for a in d.ground().subsets() {
                let dy = d.distance(a)? as i32;
                total = total.add(&LaurentHalfPoly::monomial(
                    &vars,
                    C::one(),
                    &[(0, 2 * a.len() as i32), (1, 2 * dy)],
                ))?;
            }
            Ok(total)
        }
        Method::ViaRelation => {
            // specialize the transition polynomial at w = 1
            let q = transition_z0::<C>(d, Method::Direct, &TotalOrder::declaration(d.ground_size()))?;
            let images = [
                MonomialImage::constant_one(&vars),
                MonomialImage::var(&vars, 0),
                MonomialImage::var(&vars, 1),
            ];
            q.substitute(&vars, &images)
        }
        Method::Activities => {
            let order = TotalOrder::declaration(d.ground_size());
            let one = LaurentHalfPoly::one(&vars);
            let y_over_x = LaurentHalfPoly::monomial(&vars, C::one(), &[(0, -2), (1, 2)]);
            let xy = LaurentHalfPoly::monomial(&vars, C::one(), &[(0, 2), (1, 2)]);
            let int_factor = one.add(&y_over_x)?;
            let ext_factor = one.add(&xy)?;
            let mut total = LaurentHalfPoly::zero(&vars);
            for &f in d.feasibles() {
                let graph = fundamental_graph(d, f)?;
                let (i, j) = activity_counts_with(&graph, &order);
                let term = LaurentHalfPoly::monomial(&vars, C::one(), &[(0, 2 * f.len() as i32)])
                    .mul(&int_factor.pow(i as i64)?)?
                    .mul(&ext_factor.pow(j as i64)?)?;
                total = total.add(&term)?;
            }
            Ok(total)
        }
        other => Err(unsupported(other)),
    }
}

/// One-variable interlace polynomial in [y].
pub fn interlace_one<C: Coefficient>(
    d: &DeltaMatroid,
    method: Method,
) -> Result<LaurentHalfPoly<C>> {
    let vars = interlace1_vars();
    match method {
        Method::Direct => {
            let mut total = LaurentHalfPoly::zero(&vars);
            for a in d.ground().subsets() {
                let dy = d.distance(a)? as i32;
                total = total.add(&LaurentHalfPoly::monomial(&vars, C::one(), &[(0, 2 * dy)]))?;
            }
            Ok(total)
        }
        Method::ViaRelation => {
            let q2 = interlace_two::<C>(d, Method::Direct)?;
            let images = [MonomialImage::constant_one(&vars), MonomialImage::var(&vars, 0)];
            q2.substitute(&vars, &images)
        }
        Method::Activities => {
            // sum of y^(i+j) evaluated at y+1 equals the polynomial itself
            let order = TotalOrder::declaration(d.ground_size());
            let y_plus_1 = LaurentHalfPoly::var(&vars, 0).add(&LaurentHalfPoly::one(&vars))?;
            let mut total = LaurentHalfPoly::zero(&vars);
            for &f in d.feasibles() {
                let graph = fundamental_graph(d, f)?;
                let (i, j) = activity_counts_with(&graph, &order);
                total = total.add(&y_plus_1.pow((i + j) as i64)?)?;
            }
            Ok(total)
        }
        other => Err(unsupported(other)),
    }
}

/// Shifted one-variable expansion: sum over feasible sets of y^(i(F)+j(F)).
/// This is the one-variable interlace polynomial at argument y - 1.
pub fn interlace_one_shifted<C: Coefficient>(
    d: &DeltaMatroid,
    order: &TotalOrder,
) -> Result<LaurentHalfPoly<C>> {
    let vars = interlace1_vars();
    let mut total = LaurentHalfPoly::zero(&vars);
    for &f in d.feasibles() {
        let graph = fundamental_graph(d, f)?;
        let (i, j) = activity_counts_with(&graph, order);
        total = total.add(&LaurentHalfPoly::monomial(
            &vars,
            C::one(),
            &[(0, 2 * (i + j) as i32)],
        ))?;
    }
    Ok(total)
}

/// Matroid rank of `a` inside the minimum-cardinality matroid of `d`:
/// the maximum intersection with a minimum-size feasible set.
pub fn min_rank(d: &DeltaMatroid, a: SubsetMask) -> usize {
    let r_min = d.rank_profile().r_min_full;
    d.feasibles()
        .iter()
        .filter(|f| f.len() == r_min)
        .map(|&f| (f & a).len())
        .max()
        .unwrap_or(0)
}

/// Three-variable form in [s, y, z] (s = x-1):
/// sum over A of s^(rmin(E)-rmin(A)) y^(|A|-rmin(A)) z^(w(D|A)).
pub fn br_three<C: Coefficient>(d: &DeltaMatroid) -> Result<LaurentHalfPoly<C>> {
    let n = d.ground_size();
    if n > 20 {
        return Err(Error::CapExceeded { what: "subset sum", limit: 20, got: n });
    }
    let vars = br3_vars();
    let r_min_e = d.rank_profile().r_min_full;
    let mut total = LaurentHalfPoly::zero(&vars);
    for a in d.ground().subsets() {
        let r_a = min_rank(d, a);
        let width = d.restrict(a)?.rank_profile().width;
        total = total.add(&LaurentHalfPoly::monomial(
            &vars,
            C::one(),
            &[
                (0, 2 * (r_min_e - r_a) as i32),
                (1, 2 * (a.len() - r_a) as i32),
                (2, 2 * width as i32),
            ],
        ))?;
    }
    Ok(total)
}

/// Two-variable form in shifted variables [s, t] (s = x-1, t = y-1), with
/// possibly half-integral exponents coming from sigma.
pub fn br_two<C: Coefficient>(d: &DeltaMatroid, method: Method) -> Result<LaurentHalfPoly<C>> {
    let vars = br2_vars();
    match method {
        Method::Direct => {
            let n = d.ground_size();
            if n > 20 {
                return Err(Error::CapExceeded { what: "subset sum", limit: 20, got: n });
            }
            let two_sigma_e = d.rank_profile().two_sigma as i32;
            let mut total = LaurentHalfPoly::zero(&vars);
            for a in d.ground().subsets() {
                let two_sigma_a = d.two_sigma_of(a)? as i32;
                total = total.add(&LaurentHalfPoly::monomial(
                    &vars,
                    C::one(),
                    &[
                        (0, two_sigma_e - two_sigma_a),
                        (1, 2 * a.len() as i32 - two_sigma_a),
                    ],
                ))?;
            }
            Ok(total)
        }
        Method::ViaRelation => {
            // substitute the three-variable form at (s, t, 1/sqrt(st)) and
            // multiply by s^(width/2)
            let p3 = br_three::<C>(d)?;
            let images = [
                MonomialImage::var(&vars, 0),
                MonomialImage::var(&vars, 1),
                MonomialImage::monomial(&vars, &[(0, -1), (1, -1)]),
            ];
            let substituted = p3.substitute(&vars, &images)?;
            let width = d.rank_profile().width as i32;
            Ok(substituted.mul_monomial(&[(0, width)]))
        }
        Method::Activities => {
            let order = TotalOrder::declaration(d.ground_size());
            let profile = d.rank_profile();
            let s_plus_1 = LaurentHalfPoly::var(&vars, 0).add(&LaurentHalfPoly::one(&vars))?;
            let t_plus_1 = LaurentHalfPoly::var(&vars, 1).add(&LaurentHalfPoly::one(&vars))?;
            let mut total = LaurentHalfPoly::zero(&vars);
            for &f in d.feasibles() {
                let graph = fundamental_graph(d, f)?;
                let (i, j) = activity_counts_with(&graph, &order);
                let term = LaurentHalfPoly::monomial(
                    &vars,
                    C::one(),
                    &[
                        (0, (profile.r_max_full - f.len()) as i32),
                        (1, (f.len() - profile.r_min_full) as i32),
                    ],
                )
                .mul(&s_plus_1.pow(i as i64)?)?
                .mul(&t_plus_1.pow(j as i64)?)?;
                total = total.add(&term)?;
            }
            Ok(total)
        }
        other => Err(unsupported(other)),
    }
}

/// Classical rank-nullity sum for matroids, in [s, t] with integral
/// exponents; the rank function comes straight from the basis family.
pub fn tutte_oracle<C: Coefficient>(m: &DeltaMatroid) -> Result<LaurentHalfPoly<C>> {
    if !m.is_matroid() {
        return Err(Error::NotAMatroid);
    }
    let n = m.ground_size();
    if n > 20 {
        return Err(Error::CapExceeded { what: "subset sum", limit: 20, got: n });
    }
    let vars = br2_vars();
    let rank = |a: SubsetMask| -> i32 {
        m.feasibles()
            .iter()
            .map(|&b| (b & a).len())
            .max()
            .unwrap_or(0) as i32
    };
    let r_e = rank(m.ground().full_mask());
    let mut total = LaurentHalfPoly::zero(&vars);
    for a in m.ground().subsets() {
        let r_a = rank(a);
        total = total.add(&LaurentHalfPoly::monomial(
            &vars,
            C::one(),
            &[(0, 2 * (r_e - r_a)), (1, 2 * (a.len() as i32 - r_a))],
        ))?;
    }
    Ok(total)
}

/// c coloops plus l loops as a direct sum; its transition polynomial is the
/// closed base-case product.
pub fn coloops_and_loops(c: usize, l: usize) -> DeltaMatroid {
    let names: Vec<String> = (0..c)
        .map(|i| format!("c{}", i + 1))
        .chain((0..l).map(|i| format!("l{}", i + 1)))
        .collect();
    let ground = GroundSet::new(names).expect("labels are distinct");
    let full = SubsetMask::full(c + l);
    let coloop_mask = SubsetMask(full.bits() & ((1u64 << c) - 1).max(0));
    let coloop_mask = if c == 0 { SubsetMask::empty() } else { coloop_mask };
    DeltaMatroid::new_unchecked(ground, vec![coloop_mask])
}

/// Named cross-checks between the invariants. Identifiers describe the
/// identity being exercised.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    /// Two-variable form from the three-variable one via the
    /// s^(width/2)-weighted substitution chain.
    BrThreeToTwo,
    /// Interlace polynomial at (sqrt(y/x), sqrt(xy)) against the weighted
    /// three-variable form.
    InterlaceBrBridge,
    /// Activities expansion of the two-variable interlace polynomial.
    InterlaceExpansion,
    /// Activities expansion of the one-variable interlace polynomial.
    InterlaceOneExpansion,
    /// On matroids the two-variable form is the classical Tutte polynomial.
    TutteReduction,
    /// Delta-matroid activities agree with classical matroid activities.
    MatroidActivities,
    /// Orientability via singleton feasibility matches the ribbon-loop
    /// double-twist description.
    RibbonLoopOrientability,
    /// Interlacement matches connectivity of the restricted twist.
    InterlacementConnectivity,
    /// Leaf mask sizes match activity counts.
    LeafAccounting,
}

impl Relation {
    pub const ALL: [Relation; 9] = [
        Relation::BrThreeToTwo,
        Relation::InterlaceBrBridge,
        Relation::InterlaceExpansion,
        Relation::InterlaceOneExpansion,
        Relation::TutteReduction,
        Relation::MatroidActivities,
        Relation::RibbonLoopOrientability,
        Relation::InterlacementConnectivity,
        Relation::LeafAccounting,
    ];

    pub fn parse(s: &str) -> Result<Relation> {
        match s {
            "br-three-to-two" => Ok(Relation::BrThreeToTwo),
            "interlace-br-bridge" => Ok(Relation::InterlaceBrBridge),
            "interlace-expansion" => Ok(Relation::InterlaceExpansion),
            "interlace-one-expansion" => Ok(Relation::InterlaceOneExpansion),
            "tutte-reduction" => Ok(Relation::TutteReduction),
            "matroid-activities" => Ok(Relation::MatroidActivities),
            "ribbon-loop-orientability" => Ok(Relation::RibbonLoopOrientability),
            "interlacement-connectivity" => Ok(Relation::InterlacementConnectivity),
            "leaf-accounting" => Ok(Relation::LeafAccounting),
            other => Err(Error::UnknownRelation(other.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Relation::BrThreeToTwo => "br-three-to-two",
            Relation::InterlaceBrBridge => "interlace-br-bridge",
            Relation::InterlaceExpansion => "interlace-expansion",
            Relation::InterlaceOneExpansion => "interlace-one-expansion",
            Relation::TutteReduction => "tutte-reduction",
            Relation::MatroidActivities => "matroid-activities",
            Relation::RibbonLoopOrientability => "ribbon-loop-orientability",
            Relation::InterlacementConnectivity => "interlacement-connectivity",
            Relation::LeafAccounting => "leaf-accounting",
        }
    }
}

/// A point is a ribbon loop when it misses every minimum-size feasible set.
pub fn is_ribbon_loop(d: &DeltaMatroid, a: usize) -> bool {
    let r_min = d.rank_profile().r_min_full;
    d.feasibles()
        .iter()
        .filter(|f| f.len() == r_min)
        .all(|f| !f.contains(a))
}

fn orders_to_check(n: usize) -> Vec<TotalOrder> {
    if n <= 4 {
        TotalOrder::all(n)
    } else {
        let mut rev: Vec<usize> = (0..n).rev().collect();
        let reversed = TotalOrder::from_ranks(std::mem::take(&mut rev)).expect("permutation");
        vec![TotalOrder::declaration(n), reversed]
    }
}

/// Does `b` count as externally active for basis `basis` in the classical
/// sense: b is outside the basis and is the order-minimum of its fundamental
/// circuit.
fn classically_externally_active(
    m: &DeltaMatroid,
    basis: SubsetMask,
    order: &TotalOrder,
    b: usize,
) -> Result<bool> {
    let circuit = fundamental_circuit(m, basis, b)?;
    Ok(circuit.iter().all(|c| c == b || order.before(b, c)))
}

/// Evaluate one named identity on a delta-matroid; identities with a
/// matroid hypothesis hold vacuously on non-matroids.
pub fn verify_relation<C: Coefficient>(d: &DeltaMatroid, rel: Relation) -> Result<bool> {
    match rel {
        Relation::BrThreeToTwo => {
            Ok(br_two::<C>(d, Method::Direct)? == br_two::<C>(d, Method::ViaRelation)?)
        }
        Relation::InterlaceBrBridge => {
            let xy = interlace2_vars();
            // left side: interlace polynomial at x -> sqrt(y/x), y -> sqrt(xy)
            let q = interlace_two::<C>(d, Method::Direct)?;
            let images = [
                MonomialImage::monomial(&xy, &[(0, -1), (1, 1)]),
                MonomialImage::monomial(&xy, &[(0, 1), (1, 1)]),
            ];
            let lhs = q.substitute(&xy, &images)?;
            // right side: three-variable form at (x, y, 1/sqrt(xy)) weighted
            // by (y/x)^(rmin/2)
            let p3 = br_three::<C>(d)?;
            let images = [
                MonomialImage::var(&xy, 0),
                MonomialImage::var(&xy, 1),
                MonomialImage::monomial(&xy, &[(0, -1), (1, -1)]),
            ];
            let r_min = d.rank_profile().r_min_full as i32;
            let rhs = p3
                .substitute(&xy, &images)?
                .mul_monomial(&[(0, -r_min), (1, r_min)]);
            Ok(lhs == rhs)
        }
        Relation::InterlaceExpansion => {
            let direct = interlace_two::<C>(d, Method::Direct)?;
            Ok(direct == interlace_two::<C>(d, Method::Activities)?
                && direct == interlace_two::<C>(d, Method::ViaRelation)?)
        }
        Relation::InterlaceOneExpansion => {
            let direct = interlace_one::<C>(d, Method::Direct)?;
            if direct != interlace_one::<C>(d, Method::Activities)?
                || direct != interlace_one::<C>(d, Method::ViaRelation)?
            {
                return Ok(false);
            }
            // the shifted expansion must expand back to the direct form
            for order in orders_to_check(d.ground_size()) {
                let shifted = interlace_one_shifted::<C>(d, &order)?;
                if !shifted.is_polynomial() {
                    return Ok(false);
                }
                let expanded = shifted.expand_shift(&interlace1_vars(), 1)?;
                if expanded != direct {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Relation::TutteReduction => {
            if !d.is_matroid() {
                return Ok(true);
            }
            let t = tutte_oracle::<C>(d)?;
            Ok(t == br_two::<C>(d, Method::Direct)? && t == br_two::<C>(d, Method::Activities)?)
        }
        Relation::MatroidActivities => {
            if !d.is_matroid() {
                return Ok(true);
            }
            let n = d.ground_size();
            let dual = d.twist(d.ground().full_mask())?;
            for order in orders_to_check(n) {
                for &basis in d.feasibles() {
                    let graph = fundamental_graph(d, basis)?;
                    for b in 0..n {
                        let class = crate::activity::classify_with(&graph, &order, b);
                        let classical = if basis.contains(b) {
                            classically_externally_active(
                                &dual,
                                basis.complement_in(n),
                                &order,
                                b,
                            )?
                        } else {
                            classically_externally_active(d, basis, &order, b)?
                        };
                        if classical != (class.active && class.orientable) {
                            return Ok(false);
                        }
                    }
                }
            }
            Ok(true)
        }
        Relation::RibbonLoopOrientability => {
            for &f in d.feasibles() {
                let twisted = d.twist(f)?;
                for a in 0..d.ground_size() {
                    let nonor = crate::interlace::is_nonorientable(d, f, a)?;
                    let loop_in_twist = is_ribbon_loop(&twisted, a);
                    let loop_in_double =
                        is_ribbon_loop(&twisted.twist(SubsetMask::singleton(a))?, a);
                    if nonor != (loop_in_twist && loop_in_double) {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        Relation::InterlacementConnectivity => {
            for &f in d.feasibles() {
                for a in 0..d.ground_size() {
                    for b in (a + 1)..d.ground_size() {
                        if crate::interlace::is_interlaced(d, f, a, b)?
                            != crate::interlace::connectivity_characterization(d, f, a, b)?
                        {
                            return Ok(false);
                        }
                    }
                }
            }
            Ok(true)
        }
        Relation::LeafAccounting => {
            for order in orders_to_check(d.ground_size()) {
                if !crate::activity::check_core_identities(d, &order)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// Every leaf of the computation tree, regrouped as (leaf, covered feasible
/// set); used by the structural suites.
pub fn tree_leaf_map(tree: &ComputationTree) -> Vec<(SubsetMask, usize)> {
    tree.nodes()
        .iter()
        .enumerate()
        .filter_map(|(i, n)| match &n.kind {
            NodeKind::Leaf(stats) => Some((stats.feasible(), i)),
            NodeKind::Internal { .. } => None,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::LaurentHalfPoly;

    type P = LaurentHalfPoly<i64>;

    fn figure_dm() -> DeltaMatroid {
        let ground = GroundSet::alpha(3);
        let feasibles: Vec<SubsetMask> = ground
            .subsets()
            .filter(|&m| m != SubsetMask::singleton(0))
            .collect();
        DeltaMatroid::new(ground, feasibles).unwrap()
    }

    fn mono(vars: &VarList, c: i64, powers: &[(usize, i32)]) -> P {
        P::monomial(vars, c, powers)
    }

    #[test]
    fn transition_full_one_element() {
        let vars = transition_vars();
        // single loop: w + xy + z
        let lp = DeltaMatroid::from_labels(["a"], [vec![]]).unwrap();
        let q = transition_full::<i64>(&lp).unwrap();
        let expect = mono(&vars, 1, &[(0, 2)])
            .add(&mono(&vars, 1, &[(1, 2), (3, 2)]))
            .unwrap()
            .add(&mono(&vars, 1, &[(2, 2)]))
            .unwrap();
        assert_eq!(q, expect);

        // single coloop: wy + x + zy (the C-part also carries y^(d(empty)))
        let co = DeltaMatroid::from_labels(["a"], [vec!["a"]]).unwrap();
        let q = transition_full::<i64>(&co).unwrap();
        let expect = mono(&vars, 1, &[(0, 2), (3, 2)])
            .add(&mono(&vars, 1, &[(1, 2)]))
            .unwrap()
            .add(&mono(&vars, 1, &[(2, 2), (3, 2)]))
            .unwrap();
        assert_eq!(q, expect);
    }

    #[test]
    fn transition_full_specializes_to_z0() {
        let z0 = transition_z0_vars();
        for d in crate::gen::enumerate_small(3).unwrap() {
            let full = transition_full::<i64>(&d).unwrap();
            let restricted = full.set_var_zero(&z0, 2).unwrap();
            let direct =
                transition_z0::<i64>(&d, Method::Direct, &TotalOrder::declaration(3)).unwrap();
            assert_eq!(restricted, direct);
        }
    }

    #[test]
    fn z0_base_cases() {
        let vars = transition_z0_vars();
        let order1 = TotalOrder::declaration(1);
        // single coloop -> x + wy
        let co = DeltaMatroid::from_labels(["a"], [vec!["a"]]).unwrap();
        let expect = mono(&vars, 1, &[(1, 2)])
            .add(&mono(&vars, 1, &[(0, 2), (2, 2)]))
            .unwrap();
        for m in [Method::Direct, Method::DeletionContraction, Method::Activities] {
            assert_eq!(transition_z0::<i64>(&co, m, &order1).unwrap(), expect);
        }

        // single nonsingular point -> w + x
        let ns = DeltaMatroid::from_labels(["a"], [vec![], vec!["a"]]).unwrap();
        let expect = mono(&vars, 1, &[(0, 2)]).add(&mono(&vars, 1, &[(1, 2)])).unwrap();
        for m in [Method::Direct, Method::DeletionContraction, Method::Activities] {
            assert_eq!(transition_z0::<i64>(&ns, m, &order1).unwrap(), expect);
        }
    }

    #[test]
    fn three_methods_agree_on_figure() {
        let d = figure_dm();
        let direct = transition_z0::<i64>(&d, Method::Direct, &TotalOrder::declaration(3)).unwrap();
        assert!(direct.is_polynomial());
        for order in TotalOrder::all(3) {
            assert_eq!(
                transition_z0::<i64>(&d, Method::DeletionContraction, &order).unwrap(),
                direct
            );
            assert_eq!(
                transition_z0::<i64>(&d, Method::Activities, &order).unwrap(),
                direct
            );
            assert_eq!(transition_z0_leafsum::<i64>(&d, &order).unwrap(), direct);
        }
    }

    #[test]
    fn dc_recurrence_for_every_nonsingular_point() {
        let d = figure_dm();
        let order = TotalOrder::declaration(3);
        let q = transition_z0::<i64>(&d, Method::Direct, &order).unwrap();
        for a in d.nonsingular_mask().iter() {
            let del = d.minor(SubsetMask::empty(), SubsetMask::singleton(a)).unwrap();
            let con = d.minor(SubsetMask::singleton(a), SubsetMask::empty()).unwrap();
            let qd = transition_z0::<i64>(&del, Method::Direct, &TotalOrder::declaration(2)).unwrap();
            let qc = transition_z0::<i64>(&con, Method::Direct, &TotalOrder::declaration(2)).unwrap();
            let combined = qd.mul_monomial(&[(0, 2)]).add(&qc.mul_monomial(&[(1, 2)])).unwrap();
            assert_eq!(combined, q);
        }
    }

    #[test]
    fn interlace_two_examples() {
        let vars = interlace2_vars();
        // single loop: 1 + xy
        let lp = DeltaMatroid::from_labels(["a"], [vec![]]).unwrap();
        let expect = P::one(&vars).add(&mono(&vars, 1, &[(0, 2), (1, 2)])).unwrap();
        for m in [Method::Direct, Method::ViaRelation, Method::Activities] {
            assert_eq!(interlace_two::<i64>(&lp, m).unwrap(), expect);
        }

        let u12 = DeltaMatroid::from_labels(["a", "b"], [vec!["a"], vec!["b"]]).unwrap();
        let d = interlace_two::<i64>(&u12, Method::Direct).unwrap();
        assert_eq!(d, interlace_two::<i64>(&u12, Method::Activities).unwrap());
    }

    #[test]
    fn interlace_one_shifted_counts() {
        let d = figure_dm();
        let order = TotalOrder::declaration(3);
        let shifted = interlace_one_shifted::<i64>(&d, &order).unwrap();
        assert!(shifted.is_polynomial());
        // constant term counts the feasible sets with i + j = 0
        let mut zero_count = 0i64;
        for &f in d.feasibles() {
            let (i, j) = crate::activity::activity_counts(&d, f, &order).unwrap();
            if i + j == 0 {
                zero_count += 1;
            }
        }
        let constant = shifted
            .terms()
            .find(|(m, _)| m.halves().iter().all(|&h| h == 0))
            .map(|(_, c)| *c)
            .unwrap_or(0);
        assert_eq!(constant, zero_count);
        // and expands to the direct polynomial
        let expanded = shifted.expand_shift(&interlace1_vars(), 1).unwrap();
        assert_eq!(expanded, interlace_one::<i64>(&d, Method::Direct).unwrap());
    }

    #[test]
    fn br_three_examples() {
        let vars = br3_vars();
        let co = DeltaMatroid::from_labels(["a"], [vec!["a"]]).unwrap();
        let expect = mono(&vars, 1, &[(0, 2)]).add(&P::one(&vars)).unwrap();
        assert_eq!(br_three::<i64>(&co).unwrap(), expect);

        let lp = DeltaMatroid::from_labels(["a"], [vec![]]).unwrap();
        let expect = P::one(&vars).add(&mono(&vars, 1, &[(1, 2)])).unwrap();
        assert_eq!(br_three::<i64>(&lp).unwrap(), expect);

        // matroids have width zero everywhere: no z appears
        let u23 = DeltaMatroid::from_labels(
            ["a", "b", "c"],
            [vec!["a", "b"], vec!["a", "c"], vec!["b", "c"]],
        )
        .unwrap();
        let p = br_three::<i64>(&u23).unwrap();
        assert!(p.terms().all(|(m, _)| m.halves()[2] == 0));
    }

    #[test]
    fn br_two_examples() {
        let vars = br2_vars();
        // single coloop -> s + 1 (i.e. x)
        let co = DeltaMatroid::from_labels(["a"], [vec!["a"]]).unwrap();
        let expect = mono(&vars, 1, &[(0, 2)]).add(&P::one(&vars)).unwrap();
        for m in [Method::Direct, Method::ViaRelation, Method::Activities] {
            assert_eq!(br_two::<i64>(&co, m).unwrap(), expect, "{m:?}");
        }
        // single loop -> t + 1 (i.e. y)
        let lp = DeltaMatroid::from_labels(["a"], [vec![]]).unwrap();
        let expect = mono(&vars, 1, &[(1, 2)]).add(&P::one(&vars)).unwrap();
        for m in [Method::Direct, Method::ViaRelation, Method::Activities] {
            assert_eq!(br_two::<i64>(&lp, m).unwrap(), expect, "{m:?}");
        }
        // odd width produces genuinely half-integral exponents
        let ns = DeltaMatroid::from_labels(["a"], [vec![], vec!["a"]]).unwrap();
        let p = br_two::<i64>(&ns, Method::Direct).unwrap();
        assert!(!p.is_integral());
    }

    #[test]
    fn tutte_u23() {
        let u23 = DeltaMatroid::from_labels(
            ["a", "b", "c"],
            [vec!["a", "b"], vec!["a", "c"], vec!["b", "c"]],
        )
        .unwrap();
        let t = tutte_oracle::<i64>(&u23).unwrap();
        let xy = interlace2_vars();
        let expanded = t.expand_shift(&xy, -1).unwrap();
        // x^2 + x + y
        let expect = mono(&xy, 1, &[(0, 4)])
            .add(&mono(&xy, 1, &[(0, 2)]))
            .unwrap()
            .add(&mono(&xy, 1, &[(1, 2)]))
            .unwrap();
        assert_eq!(expanded, expect);
        assert_eq!(t, br_two::<i64>(&u23, Method::Direct).unwrap());

        assert!(matches!(
            tutte_oracle::<i64>(&figure_dm()),
            Err(Error::NotAMatroid)
        ));
    }

    #[test]
    fn base_case_products() {
        let vars = transition_z0_vars();
        for c in 0..=3usize {
            for l in 0..=3usize {
                let d = coloops_and_loops(c, l);
                assert_eq!(d.ground_size(), c + l);
                let expect: P = singular_base(&vars, c, l);
                let order = TotalOrder::declaration(c + l);
                for m in [Method::Direct, Method::DeletionContraction, Method::Activities] {
                    assert_eq!(transition_z0::<i64>(&d, m, &order).unwrap(), expect);
                }
            }
        }
    }

    #[test]
    fn relations_on_small_fixtures() {
        let fixtures = [
            DeltaMatroid::from_labels(["a"], [vec!["a"]]).unwrap(),
            DeltaMatroid::from_labels(["a"], [vec![]]).unwrap(),
            DeltaMatroid::from_labels(["a"], [vec![], vec!["a"]]).unwrap(),
            figure_dm(),
        ];
        for d in &fixtures {
            for rel in Relation::ALL {
                assert!(
                    verify_relation::<i64>(d, rel).unwrap(),
                    "{} fails on {:?}",
                    rel.name(),
                    d
                );
            }
        }
    }

    #[test]
    fn relation_parsing() {
        assert_eq!(Relation::parse("tutte-reduction").unwrap(), Relation::TutteReduction);
        assert!(Relation::parse("nope").is_err());
        for rel in Relation::ALL {
            assert_eq!(Relation::parse(rel.name()).unwrap(), rel);
        }
    }
}
