//! Interlacement with respect to a feasible set: orientability, pairing,
//! interlace neighborhoods, fundamental graphs, and the matroid
//! fundamental-circuit bridge.

use crate::dm::{Connectivity, DeltaMatroid};
use crate::error::{Error, Result};
use crate::ground::{GroundSet, SubsetMask};

/// The fundamental graph of a delta-matroid with respect to a feasible set:
/// vertices are ground elements, edges are interlaced pairs. Construction
/// twists once and caches the per-element data, so building the whole graph
/// costs one twist plus O(n^2) feasibility lookups.
#[derive(Clone, Debug)]
pub struct InterlaceGraph {
    ground: GroundSet,
    basis: SubsetMask,
    nonorientable: SubsetMask,
    adjacency: Vec<SubsetMask>,
}

impl InterlaceGraph {
    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// The feasible set the graph was built against.
    pub fn basis(&self) -> SubsetMask {
        self.basis
    }

    pub fn neighbors(&self, a: usize) -> SubsetMask {
        self.adjacency[a]
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].contains(b)
    }

    pub fn is_nonorientable(&self, a: usize) -> bool {
        self.nonorientable.contains(a)
    }
}

fn require_feasible(d: &DeltaMatroid, f: SubsetMask) -> Result<()> {
    if d.is_feasible(f) {
        Ok(())
    } else {
        Err(Error::NotFeasible(d.ground().set_string(f)))
    }
}

/// A point is F-nonorientable iff {a} is feasible in D*F.
pub fn is_nonorientable(d: &DeltaMatroid, f: SubsetMask, a: usize) -> Result<bool> {
    require_feasible(d, f)?;
    // {a} feasible in D*F  <=>  F Δ {a} feasible in D
    Ok(d.is_feasible(f ^ SubsetMask::singleton(a)))
}

/// A pair {a,b} is F-paired iff {a,b} is feasible in D*F.
pub fn is_paired(d: &DeltaMatroid, f: SubsetMask, a: usize, b: usize) -> Result<bool> {
    require_feasible(d, f)?;
    if a == b {
        return Err(Error::SamePoint);
    }
    Ok(d.is_feasible(f ^ (SubsetMask::singleton(a) | SubsetMask::singleton(b))))
}

/// Direct evaluation of interlacement: either at most one of the points is
/// F-nonorientable and the pair is F-paired, or both are F-nonorientable
/// and the pair is F-separated.
pub fn is_interlaced(d: &DeltaMatroid, f: SubsetMask, a: usize, b: usize) -> Result<bool> {
    if a == b {
        return Err(Error::SamePoint);
    }
    let na = is_nonorientable(d, f, a)?;
    let nb = is_nonorientable(d, f, b)?;
    let paired = is_paired(d, f, a, b)?;
    Ok(if na && nb { !paired } else { paired })
}

/// Second, independent characterization: (D*F)|{a,b} is connected and has a
/// nonempty feasible set. Must agree with `is_interlaced` everywhere.
pub fn connectivity_characterization(
    d: &DeltaMatroid,
    f: SubsetMask,
    a: usize,
    b: usize,
) -> Result<bool> {
    if a == b {
        return Err(Error::SamePoint);
    }
    require_feasible(d, f)?;
    let restricted = d
        .twist(f)?
        .restrict(SubsetMask::singleton(a) | SubsetMask::singleton(b))?;
    let nontrivial = restricted.feasibles().iter().any(|m| !m.is_empty());
    Ok(nontrivial && matches!(restricted.connectivity()?, Connectivity::Connected))
}

/// Set of points F-interlaced with `a` (its open neighborhood in the
/// fundamental graph).
pub fn interlace_set(d: &DeltaMatroid, f: SubsetMask, a: usize) -> Result<SubsetMask> {
    Ok(fundamental_graph(d, f)?.neighbors(a))
}

pub fn fundamental_graph(d: &DeltaMatroid, f: SubsetMask) -> Result<InterlaceGraph> {
    require_feasible(d, f)?;
    let n = d.ground_size();
    let twisted = d.twist(f)?;
    let mut nonorientable = SubsetMask::empty();
    for a in 0..n {
        if twisted.is_feasible(SubsetMask::singleton(a)) {
            nonorientable = nonorientable.with(a);
        }
    }
    let mut adjacency = vec![SubsetMask::empty(); n];
    for a in 0..n {
        for b in (a + 1)..n {
            let paired =
                twisted.is_feasible(SubsetMask::singleton(a) | SubsetMask::singleton(b));
            let both_nonor = nonorientable.contains(a) && nonorientable.contains(b);
            let interlaced = if both_nonor { !paired } else { paired };
            if interlaced {
                adjacency[a] = adjacency[a].with(b);
                adjacency[b] = adjacency[b].with(a);
            }
        }
    }
    Ok(InterlaceGraph {
        ground: d.ground().clone(),
        basis: f,
        nonorientable,
        adjacency,
    })
}

/// The unique circuit of B ∪ {a} in a matroid given by its basis family:
/// {a} plus the basis elements b with B Δ {a,b} feasible.
pub fn fundamental_circuit(m: &DeltaMatroid, basis: SubsetMask, a: usize) -> Result<SubsetMask> {
    if !m.is_matroid() {
        return Err(Error::NotAMatroid);
    }
    require_feasible(m, basis)?;
    if basis.contains(a) {
        return Err(Error::ElementInBasis(m.ground().name(a).to_string()));
    }
    let mut circuit = SubsetMask::singleton(a);
    for b in basis.iter() {
        if m.is_feasible(basis ^ (SubsetMask::singleton(a) | SubsetMask::singleton(b))) {
            circuit = circuit.with(b);
        }
    }
    Ok(circuit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dm::DeltaMatroid;

    fn figure_dm() -> DeltaMatroid {
        let ground = GroundSet::alpha(3);
        let feasibles: Vec<SubsetMask> = ground
            .subsets()
            .filter(|&m| m != SubsetMask::singleton(0))
            .collect();
        DeltaMatroid::new(ground, feasibles).unwrap()
    }

    #[test]
    fn nonorientable_examples() {
        let d = DeltaMatroid::from_labels(["a"], [vec![], vec!["a"]]).unwrap();
        assert!(is_nonorientable(&d, SubsetMask::empty(), 0).unwrap());

        let pair = DeltaMatroid::from_labels(["a", "b"], [vec![], vec!["a", "b"]]).unwrap();
        assert!(!is_nonorientable(&pair, SubsetMask::empty(), 0).unwrap());

        assert!(matches!(
            is_nonorientable(&pair, SubsetMask::singleton(0), 0),
            Err(Error::NotFeasible(_))
        ));
    }

    #[test]
    fn interlacement_cases() {
        let e = SubsetMask::empty();
        // case 1: orientable pair that is paired
        let d = DeltaMatroid::from_labels(["a", "b"], [vec![], vec!["a", "b"]]).unwrap();
        assert!(is_interlaced(&d, e, 0, 1).unwrap());

        // case 2: both nonorientable and separated
        let d = DeltaMatroid::from_labels(["a", "b"], [vec![], vec!["a"], vec!["b"]]).unwrap();
        assert!(is_interlaced(&d, e, 0, 1).unwrap());

        // both nonorientable but paired: not interlaced
        let d = DeltaMatroid::from_labels(
            ["a", "b"],
            [vec![], vec!["a"], vec!["b"], vec!["a", "b"]],
        )
        .unwrap();
        assert!(!is_interlaced(&d, e, 0, 1).unwrap());

        assert!(matches!(is_interlaced(&d, e, 1, 1), Err(Error::SamePoint)));
    }

    #[test]
    fn interlacement_is_symmetric() {
        let d = figure_dm();
        for &f in d.feasibles() {
            for a in 0..3 {
                for b in 0..3 {
                    if a != b {
                        assert_eq!(
                            is_interlaced(&d, f, a, b).unwrap(),
                            is_interlaced(&d, f, b, a).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn connectivity_form_agrees() {
        let d = figure_dm();
        for &f in d.feasibles() {
            for a in 0..3 {
                for b in (a + 1)..3 {
                    assert_eq!(
                        is_interlaced(&d, f, a, b).unwrap(),
                        connectivity_characterization(&d, f, a, b).unwrap(),
                    );
                }
            }
        }
    }

    #[test]
    fn figure_neighborhoods() {
        let d = figure_dm();
        let e = SubsetMask::empty();
        // a is interlaced with both b and c; b and c are not interlaced with
        // each other (both nonorientable and paired).
        assert_eq!(
            interlace_set(&d, e, 0).unwrap(),
            SubsetMask::from_indices([1, 2])
        );
        assert_eq!(interlace_set(&d, e, 1).unwrap(), SubsetMask::singleton(0));
        assert_eq!(interlace_set(&d, e, 2).unwrap(), SubsetMask::singleton(0));

        let single = DeltaMatroid::from_labels(["a"], [vec![], vec!["a"]]).unwrap();
        assert!(interlace_set(&single, e, 0).unwrap().is_empty());
    }

    #[test]
    fn fundamental_circuit_u23() {
        let u23 = DeltaMatroid::from_labels(
            ["a", "b", "c"],
            [vec!["a", "b"], vec!["a", "c"], vec!["b", "c"]],
        )
        .unwrap();
        let b = SubsetMask::from_indices([0, 1]);
        let c = fundamental_circuit(&u23, b, 2).unwrap();
        assert_eq!(c, SubsetMask::from_indices([0, 1, 2]));
        assert!(matches!(
            fundamental_circuit(&u23, b, 0),
            Err(Error::ElementInBasis(_))
        ));
        let not_matroid = figure_dm();
        assert!(matches!(
            fundamental_circuit(&not_matroid, SubsetMask::empty(), 0),
            Err(Error::NotAMatroid)
        ));
    }

    #[test]
    fn coloops_stay_out_of_external_circuits() {
        // matroid with coloop d: bases {a,d},{b,d} on {a,b,d}; external c?
        // use ground {a,b,d}: bases {a,d},{b,d}; element b external to {a,d}.
        let m = DeltaMatroid::from_labels(["a", "b", "d"], [vec!["a", "d"], vec!["b", "d"]])
            .unwrap();
        let basis = SubsetMask::from_indices([0, 2]);
        let c = fundamental_circuit(&m, basis, 1).unwrap();
        assert!(!c.contains(2), "coloop must not appear");
        assert_eq!(c, SubsetMask::from_indices([0, 1]));
    }

    #[test]
    fn matroid_points_always_orientable() {
        let u23 = DeltaMatroid::from_labels(
            ["a", "b", "c"],
            [vec!["a", "b"], vec!["a", "c"], vec!["b", "c"]],
        )
        .unwrap();
        for &b in u23.feasibles() {
            let g = fundamental_graph(&u23, b).unwrap();
            for a in 0..3 {
                assert!(!g.is_nonorientable(a));
            }
        }
    }
}
