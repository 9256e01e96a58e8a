//! Delta-matroids: feasible-set families with the symmetric exchange axiom,
//! twists, minors, rank data, connectivity, and the `.dm` text format.

use std::fmt;

use crate::error::{Error, Result};
use crate::ground::{GroundSet, SubsetMask, TotalOrder};

/// A ground set together with a nonempty family of feasible subsets
/// satisfying symmetric exchange. Feasible sets are stored sorted by
/// (size, mask bits) so equality and hashing are canonical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DeltaMatroid {
    ground: GroundSet,
    feasibles: Vec<SubsetMask>,
}

/// Sizes of extreme feasible sets over the full ground set. `two_sigma`
/// keeps the half-integral invariant doubled so everything stays integer.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct RankProfile {
    pub r_min_full: usize,
    pub r_max_full: usize,
    pub width: usize,
    pub two_sigma: usize,
}

/// Outcome of the connectivity search: either connected, or a witness
/// decomposition into two nontrivial factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Connectivity {
    Connected,
    Disconnected(DeltaMatroid, DeltaMatroid),
}

fn sort_family(feasibles: &mut Vec<SubsetMask>) {
    feasibles.sort_by_key(|m| (m.len(), m.bits()));
    feasibles.dedup();
}

/// True iff the family satisfies the symmetric exchange axiom:
/// for all X,Y in the family and a in XΔY there is b in XΔY
/// (possibly b = a) with XΔ{a,b} in the family.
pub fn family_satisfies_exchange(
    ground: &GroundSet,
    family: &[SubsetMask],
) -> Result<bool> {
    Ok(exchange_witness(ground, family)?.is_none())
}

/// First axiom violation, as (X, Y, a), or None if the axiom holds.
pub fn exchange_witness(
    ground: &GroundSet,
    family: &[SubsetMask],
) -> Result<Option<(SubsetMask, SubsetMask, usize)>> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    for &m in family {
        ground.check_mask(m)?;
    }
    let mut sorted: Vec<SubsetMask> = family.to_vec();
    sort_family(&mut sorted);
    let contains =
        |m: SubsetMask| sorted.binary_search_by_key(&(m.len(), m.bits()), |f| (f.len(), f.bits())).is_ok();
    for &x in &sorted {
        for &y in &sorted {
            let delta = x ^ y;
            for a in delta.iter() {
                let mut ok = false;
                for b in delta.iter() {
                    let flip = SubsetMask::singleton(a) | SubsetMask::singleton(b);
                    if contains(x ^ flip) {
                        ok = true;
                        break;
                    }
                }
                if !ok {
                    return Ok(Some((x, y, a)));
                }
            }
        }
    }
    Ok(None)
}

impl DeltaMatroid {
    /// Validating constructor; rejects empty families, invalid masks, and
    /// axiom violations.
    pub fn new(ground: GroundSet, feasibles: Vec<SubsetMask>) -> Result<Self> {
        if let Some((x, y, a)) = exchange_witness(&ground, &feasibles)? {
            return Err(Error::AxiomViolation {
                x: ground.set_string(x),
                y: ground.set_string(y),
                element: ground.name(a).to_string(),
            });
        }
        Ok(Self::new_unchecked(ground, feasibles))
    }

    /// Constructor for internally produced families (twists, minors, sums)
    /// that are delta-matroids by closure. Performs only cheap checks.
    pub fn new_unchecked(ground: GroundSet, mut feasibles: Vec<SubsetMask>) -> Self {
        assert!(!feasibles.is_empty(), "feasible family must be nonempty");
        sort_family(&mut feasibles);
        debug_assert!(feasibles.iter().all(|m| ground.check_mask(*m).is_ok()));
        DeltaMatroid { ground, feasibles }
    }

    /// Convenience constructor from label lists.
    pub fn from_labels<'a, I, J>(labels: I, sets: J) -> Result<Self>
    where
        I: IntoIterator<Item = &'a str>,
        J: IntoIterator<Item = Vec<&'a str>>,
    {
        let ground = GroundSet::new(labels.into_iter().map(str::to_string))?;
        let mut feasibles = Vec::new();
        for s in sets {
            feasibles.push(ground.mask_of(s)?);
        }
        DeltaMatroid::new(ground, feasibles)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn ground_size(&self) -> usize {
        self.ground.len()
    }

    pub fn feasibles(&self) -> &[SubsetMask] {
        &self.feasibles
    }

    pub fn is_feasible(&self, m: SubsetMask) -> bool {
        self.feasibles
            .binary_search_by_key(&(m.len(), m.bits()), |f| (f.len(), f.bits()))
            .is_ok()
    }

    /// Twist D*X: replace every feasible F by F Δ X.
    pub fn twist(&self, x: SubsetMask) -> Result<DeltaMatroid> {
        self.ground.check_mask(x)?;
        let feasibles = self.feasibles.iter().map(|&f| f ^ x).collect();
        Ok(DeltaMatroid::new_unchecked(self.ground.clone(), feasibles))
    }

    /// Intersection of all feasible sets (elements in every feasible set).
    pub fn coloops(&self) -> SubsetMask {
        self.feasibles
            .iter()
            .fold(self.ground.full_mask(), |acc, &f| acc & f)
    }

    /// Complement of the union of all feasible sets.
    pub fn loops(&self) -> SubsetMask {
        let union = self
            .feasibles
            .iter()
            .fold(SubsetMask::empty(), |acc, &f| acc | f);
        union.complement_in(self.ground.len())
    }

    /// (loops, coloops) in one scan.
    pub fn singular_points(&self) -> (SubsetMask, SubsetMask) {
        (self.loops(), self.coloops())
    }

    pub fn is_coloop(&self, i: usize) -> bool {
        self.feasibles.iter().all(|f| f.contains(i))
    }

    pub fn is_loop(&self, i: usize) -> bool {
        self.feasibles.iter().all(|f| !f.contains(i))
    }

    pub fn nonsingular_mask(&self) -> SubsetMask {
        let (lo, co) = self.singular_points();
        (lo | co).complement_in(self.ground.len())
    }

    fn delete_one(&self, i: usize) -> DeltaMatroid {
        if self.is_coloop(i) {
            return self.contract_one(i);
        }
        let feasibles: Vec<SubsetMask> = self
            .feasibles
            .iter()
            .filter(|f| !f.contains(i))
            .map(|&f| f.squeeze_out(i))
            .collect();
        DeltaMatroid::new_unchecked(self.ground.sub_ground(SubsetMask::singleton(i).complement_in(self.ground.len())), feasibles)
    }

    fn contract_one(&self, i: usize) -> DeltaMatroid {
        if self.is_loop(i) {
            return self.delete_one(i);
        }
        let feasibles: Vec<SubsetMask> = self
            .feasibles
            .iter()
            .filter(|f| f.contains(i))
            .map(|&f| f.without(i).squeeze_out(i))
            .collect();
        DeltaMatroid::new_unchecked(self.ground.sub_ground(SubsetMask::singleton(i).complement_in(self.ground.len())), feasibles)
    }

    /// Minor by contracting `contract` and deleting `delete`, one element at
    /// a time (the order does not matter). Deleting a coloop contracts it;
    /// contracting a loop deletes it.
    pub fn minor(&self, contract: SubsetMask, delete: SubsetMask) -> Result<DeltaMatroid> {
        self.ground.check_mask(contract)?;
        self.ground.check_mask(delete)?;
        if contract.intersects(delete) {
            return Err(Error::OverlappingMinor);
        }
        let contract_labels: Vec<String> = contract
            .iter()
            .map(|i| self.ground.name(i).to_string())
            .collect();
        let delete_labels: Vec<String> = delete
            .iter()
            .map(|i| self.ground.name(i).to_string())
            .collect();
        let mut cur = self.clone();
        for l in &contract_labels {
            let i = cur.ground.index_of_err(l)?;
            cur = cur.contract_one(i);
        }
        for l in &delete_labels {
            let i = cur.ground.index_of_err(l)?;
            cur = cur.delete_one(i);
        }
        Ok(cur)
    }

    /// Restriction D|A = D \ (E \ A).
    pub fn restrict(&self, keep: SubsetMask) -> Result<DeltaMatroid> {
        self.ground.check_mask(keep)?;
        self.minor(SubsetMask::empty(), keep.complement_in(self.ground.len()))
    }

    pub fn rank_profile(&self) -> RankProfile {
        let r_min = self.feasibles.first().map(|f| f.len()).unwrap_or(0);
        let r_max = self.feasibles.last().map(|f| f.len()).unwrap_or(0);
        RankProfile {
            r_min_full: r_min,
            r_max_full: r_max,
            width: r_max - r_min,
            two_sigma: r_max + r_min,
        }
    }

    /// Doubled sigma of the restriction to `a`.
    pub fn two_sigma_of(&self, a: SubsetMask) -> Result<usize> {
        Ok(self.restrict(a)?.rank_profile().two_sigma)
    }

    /// Minimum |F Δ A| over feasible F; equals the minimum feasible size of
    /// the twist D*A over the full ground set.
    pub fn distance(&self, a: SubsetMask) -> Result<usize> {
        self.ground.check_mask(a)?;
        Ok(self
            .feasibles
            .iter()
            .map(|&f| (f ^ a).len())
            .min()
            .expect("family is nonempty"))
    }

    /// Equicardinal feasible family, i.e. a matroid basis family.
    pub fn is_matroid(&self) -> bool {
        self.rank_profile().width == 0
    }

    /// Direct sum on disjoint label sets: the product family.
    pub fn direct_sum(&self, other: &DeltaMatroid) -> Result<DeltaMatroid> {
        for n in other.ground.names() {
            if self.ground.index_of(n).is_some() {
                return Err(Error::LabelCollision(n.clone()));
            }
        }
        let mut names: Vec<String> = self.ground.names().to_vec();
        names.extend(other.ground.names().iter().cloned());
        let ground = GroundSet::new(names)?;
        let shift = self.ground.len();
        let mut feasibles = Vec::with_capacity(self.feasibles.len() * other.feasibles.len());
        for &f1 in &self.feasibles {
            for &f2 in &other.feasibles {
                feasibles.push(SubsetMask(f1.bits() | (f2.bits() << shift)));
            }
        }
        Ok(DeltaMatroid::new_unchecked(ground, feasibles))
    }

    /// Connectivity by bipartition search (2^(n-1) candidates, n <= 16).
    pub fn connectivity(&self) -> Result<Connectivity> {
        let n = self.ground.len();
        if n == 0 {
            return Err(Error::EmptyGround);
        }
        if n > 16 {
            return Err(Error::CapExceeded {
                what: "connectivity bipartition search",
                limit: 16,
                got: n,
            });
        }
        // Fix element 0 on the left side; enumerate the rest.
        for rest in 0u64..(1u64 << (n - 1)) {
            let e1 = SubsetMask(rest << 1 | 1);
            let e2 = e1.complement_in(n);
            if e2.is_empty() {
                continue;
            }
            let mut p1: Vec<SubsetMask> = self.feasibles.iter().map(|&f| f & e1).collect();
            let mut p2: Vec<SubsetMask> = self.feasibles.iter().map(|&f| f & e2).collect();
            sort_family(&mut p1);
            sort_family(&mut p2);
            if p1.len() * p2.len() != self.feasibles.len() {
                continue;
            }
            let product_ok = p1
                .iter()
                .all(|&f1| p2.iter().all(|&f2| self.is_feasible(f1 | f2)));
            if product_ok {
                let d1 = DeltaMatroid::new_unchecked(
                    self.ground.sub_ground(e1),
                    p1.iter().map(|&f| project(f, e1)).collect(),
                );
                let d2 = DeltaMatroid::new_unchecked(
                    self.ground.sub_ground(e2),
                    p2.iter().map(|&f| project(f, e2)).collect(),
                );
                return Ok(Connectivity::Disconnected(d1, d2));
            }
        }
        Ok(Connectivity::Connected)
    }

    pub fn is_connected(&self) -> Result<bool> {
        Ok(matches!(self.connectivity()?, Connectivity::Connected))
    }

    /// Canonical `.dm` serialization: elements in declaration order,
    /// feasibles sorted by (size, mask).
    pub fn to_dm_string(&self) -> String {
        self.to_dm_string_with_order(None)
    }

    pub fn to_dm_string_with_order(&self, order: Option<&TotalOrder>) -> String {
        let mut out = String::new();
        out.push_str("elements:");
        for n in self.ground.names() {
            out.push(' ');
            out.push_str(n);
        }
        out.push('\n');
        if let Some(o) = order {
            out.push_str("order:");
            for i in o.sorted_elements() {
                out.push(' ');
                out.push_str(self.ground.name(i));
            }
            out.push('\n');
        }
        for &f in &self.feasibles {
            out.push_str("feasible:");
            if f.is_empty() {
                out.push_str(" -");
            } else {
                for i in f.iter() {
                    out.push(' ');
                    out.push_str(self.ground.name(i));
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Project a mask supported on `keep` down to the sub-ground index space.
fn project(m: SubsetMask, keep: SubsetMask) -> SubsetMask {
    let mut out = SubsetMask::empty();
    for (new_idx, old_idx) in keep.iter().enumerate() {
        if m.contains(old_idx) {
            out = out.with(new_idx);
        }
    }
    out
}

impl fmt::Debug for DeltaMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sets: Vec<String> = self
            .feasibles
            .iter()
            .map(|&m| self.ground.set_string(m))
            .collect();
        write!(
            f,
            "({},{{{}}})",
            self.ground.set_string(self.ground.full_mask()),
            sets.join(",")
        )
    }
}

/// Parse the `.dm` format: `elements:`, optional `order:`, `feasible:` lines,
/// `#` comments. Returns the delta-matroid and the declared order, if any.
pub fn parse_dm(text: &str) -> Result<(DeltaMatroid, Option<TotalOrder>)> {
    let mut ground: Option<GroundSet> = None;
    let mut order: Option<TotalOrder> = None;
    let mut feasibles: Vec<SubsetMask> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| Error::Parse {
            line: lineno + 1,
            msg: msg.to_string(),
        };
        let (key, rest) = line.split_once(':').ok_or_else(|| err("expected `key: ...`"))?;
        let fields: Vec<&str> = rest.split_whitespace().collect();
        match key.trim() {
            "elements" => {
                if ground.is_some() {
                    return Err(err("duplicate `elements` line"));
                }
                ground = Some(GroundSet::new(fields.iter().map(|s| s.to_string())).map_err(
                    |e| Error::Parse {
                        line: lineno + 1,
                        msg: e.to_string(),
                    },
                )?);
            }
            "order" => {
                let g = ground.as_ref().ok_or_else(|| err("`order` before `elements`"))?;
                order = Some(TotalOrder::from_labels(g, fields.iter().copied()).map_err(|e| {
                    Error::Parse {
                        line: lineno + 1,
                        msg: e.to_string(),
                    }
                })?);
            }
            "feasible" => {
                let g = ground.as_ref().ok_or_else(|| err("`feasible` before `elements`"))?;
                let mask = if fields == ["-"] {
                    SubsetMask::empty()
                } else {
                    g.mask_of(fields.iter().copied()).map_err(|e| Error::Parse {
                        line: lineno + 1,
                        msg: e.to_string(),
                    })?
                };
                feasibles.push(mask);
            }
            other => return Err(err(&format!("unknown key `{other}`"))),
        }
    }
    let ground = ground.ok_or(Error::Parse {
        line: 0,
        msg: "missing `elements` line".to_string(),
    })?;
    let dm = DeltaMatroid::new(ground, feasibles)?;
    Ok((dm, order))
}
