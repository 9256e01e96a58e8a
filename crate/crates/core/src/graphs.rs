//! Delta-matroids from abstract graphs via GF(2) adjacency matrices, plus
//! the `.graph` text format.

use crate::dm::DeltaMatroid;
use crate::error::{Error, Result};
use crate::ground::{GroundSet, SubsetMask};

/// Undirected graph with at most one edge per pair and at most one loop per
/// vertex. Adjacency rows are word-sized bit rows; a loop sets the diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraphWithLoops {
    vertices: GroundSet,
    rows: Vec<u64>,
}

impl SimpleGraphWithLoops {
    pub fn new<'a, I, E, L>(vertices: I, edges: E, loops: L) -> Result<Self>
    where
        I: IntoIterator<Item = &'a str>,
        E: IntoIterator<Item = (&'a str, &'a str)>,
        L: IntoIterator<Item = &'a str>,
    {
        let vertices = GroundSet::new(vertices.into_iter().map(str::to_string))?;
        let mut rows = vec![0u64; vertices.len()];
        for (u, v) in edges {
            let i = vertices.index_of_err(u)?;
            let j = vertices.index_of_err(v)?;
            if i == j {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("self-edge `{u}`; use a loop line"),
                });
            }
            if rows[i] >> j & 1 == 1 {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("duplicate edge {u} {v}"),
                });
            }
            rows[i] |= 1 << j;
            rows[j] |= 1 << i;
        }
        for v in loops {
            let i = vertices.index_of_err(v)?;
            if rows[i] >> i & 1 == 1 {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("duplicate loop {v}"),
                });
            }
            rows[i] |= 1 << i;
        }
        Ok(SimpleGraphWithLoops { vertices, rows })
    }

    pub fn vertices(&self) -> &GroundSet {
        &self.vertices
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn has_loop(&self, i: usize) -> bool {
        self.has_edge(i, i)
    }

    /// Graph with vertex `i` removed.
    pub fn remove_vertex(&self, i: usize) -> SimpleGraphWithLoops {
        let keep = SubsetMask::singleton(i).complement_in(self.vertices.len());
        let vertices = self.vertices.sub_ground(keep);
        let rows = keep
            .iter()
            .map(|r| SubsetMask(self.rows[r]).squeeze_out(i).bits())
            .collect();
        SimpleGraphWithLoops { vertices, rows }
    }

    /// GF(2) invertibility of the principal submatrix A[X], by Gaussian
    /// elimination on bit rows. The empty submatrix is invertible.
    pub fn gf2_principal_invertible(&self, x: SubsetMask) -> bool {
        let cols: Vec<usize> = x.iter().collect();
        let mut rows: Vec<u64> = cols
            .iter()
            .map(|&r| {
                let mut packed = 0u64;
                for (k, &c) in cols.iter().enumerate() {
                    packed |= (self.rows[r] >> c & 1) << k;
                }
                packed
            })
            .collect();
        let n = rows.len();
        for col in 0..n {
            let pivot = (col..n).find(|&r| rows[r] >> col & 1 == 1);
            let Some(pivot) = pivot else { return false };
            rows.swap(col, pivot);
            let prow = rows[col];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != col && *row >> col & 1 == 1 {
                    *row ^= prow;
                }
            }
        }
        true
    }

    /// The adjacency delta-matroid: feasible sets are the vertex subsets
    /// whose principal submatrix is invertible over GF(2), plus the empty
    /// set, which is feasible by convention.
    pub fn adjacency_dm(&self) -> DeltaMatroid {
        let ground = self.vertices.clone();
        let mut feasibles: Vec<SubsetMask> = vec![SubsetMask::empty()];
        for m in ground.subsets() {
            if !m.is_empty() && self.gf2_principal_invertible(m) {
                feasibles.push(m);
            }
        }
        DeltaMatroid::new_unchecked(ground, feasibles)
    }

    pub fn to_graph_string(&self) -> String {
        let mut out = String::new();
        out.push_str("vertices:");
        for v in self.vertices.names() {
            out.push(' ');
            out.push_str(v);
        }
        out.push('\n');
        for i in 0..self.vertices.len() {
            for j in (i + 1)..self.vertices.len() {
                if self.has_edge(i, j) {
                    out.push_str(&format!(
                        "edge: {} {}\n",
                        self.vertices.name(i),
                        self.vertices.name(j)
                    ));
                }
            }
        }
        for i in 0..self.vertices.len() {
            if self.has_loop(i) {
                out.push_str(&format!("loop: {}\n", self.vertices.name(i)));
            }
        }
        out
    }
}

/// Parse the `.graph` format: `vertices:`, `edge: u v`, `loop: v`, `#`
/// comments.
pub fn parse_graph(text: &str) -> Result<SimpleGraphWithLoops> {
    let mut vertices: Option<Vec<String>> = None;
    let mut edges: Vec<(String, String)> = Vec::new();
    let mut loops: Vec<String> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: lineno + 1, msg };
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| err("expected `key: ...`".to_string()))?;
        let fields: Vec<&str> = rest.split_whitespace().collect();
        match key.trim() {
            "vertices" => {
                if vertices.is_some() {
                    return Err(err("duplicate `vertices` line".to_string()));
                }
                vertices = Some(fields.iter().map(|s| s.to_string()).collect());
            }
            "edge" => {
                if fields.len() != 2 {
                    return Err(err("edge needs two endpoints".to_string()));
                }
                edges.push((fields[0].to_string(), fields[1].to_string()));
            }
            "loop" => {
                if fields.len() != 1 {
                    return Err(err("loop needs one vertex".to_string()));
                }
                loops.push(fields[0].to_string());
            }
            other => return Err(err(format!("unknown key `{other}`"))),
        }
    }
    let vertices = vertices.ok_or(Error::Parse {
        line: 0,
        msg: "missing `vertices` line".to_string(),
    })?;
    SimpleGraphWithLoops::new(
        vertices.iter().map(String::as_str),
        edges.iter().map(|(u, v)| (u.as_str(), v.as_str())),
        loops.iter().map(String::as_str),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dm::family_satisfies_exchange;

    #[test]
    fn principal_minors() {
        let looped = SimpleGraphWithLoops::new(["v"], [], ["v"]).unwrap();
        assert!(looped.gf2_principal_invertible(SubsetMask::singleton(0)));

        let bare = SimpleGraphWithLoops::new(["v"], [], []).unwrap();
        assert!(!bare.gf2_principal_invertible(SubsetMask::singleton(0)));
        assert!(bare.gf2_principal_invertible(SubsetMask::empty()));

        let k2 = SimpleGraphWithLoops::new(["u", "v"], [("u", "v")], []).unwrap();
        assert!(k2.gf2_principal_invertible(SubsetMask::full(2)));
    }

    #[test]
    fn adjacency_examples() {
        let bare = SimpleGraphWithLoops::new(["v"], [], []).unwrap();
        assert_eq!(bare.adjacency_dm().feasibles(), &[SubsetMask::empty()]);

        let k2 = SimpleGraphWithLoops::new(["u", "v"], [("u", "v")], []).unwrap();
        assert_eq!(
            k2.adjacency_dm().feasibles(),
            &[SubsetMask::empty(), SubsetMask::full(2)]
        );

        let looped = SimpleGraphWithLoops::new(["v"], [], ["v"]).unwrap();
        assert_eq!(
            looped.adjacency_dm().feasibles(),
            &[SubsetMask::empty(), SubsetMask::singleton(0)]
        );
    }

    #[test]
    fn adjacency_dm_satisfies_exchange() {
        // pentagon with one loop and one chord
        let g = SimpleGraphWithLoops::new(
            ["a", "b", "c", "d", "e"],
            [("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a"), ("a", "c")],
            ["d"],
        )
        .unwrap();
        let dm = g.adjacency_dm();
        assert!(family_satisfies_exchange(dm.ground(), dm.feasibles()).unwrap());
    }

    #[test]
    fn isolated_vertex_deletion_commutes() {
        let g = SimpleGraphWithLoops::new(
            ["a", "b", "c"],
            [("a", "b")],
            ["a"],
        )
        .unwrap();
        // c is isolated
        let i = 2;
        let without = g.remove_vertex(i).adjacency_dm();
        let deleted = g
            .adjacency_dm()
            .minor(SubsetMask::empty(), SubsetMask::singleton(i))
            .unwrap();
        assert_eq!(without, deleted);
    }

    #[test]
    fn graph_format_round_trip() {
        let text = "vertices: u v\nedge: u v\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.to_graph_string(), text);

        let text = "vertices: v\nloop: v\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.to_graph_string(), text);

        assert!(parse_graph("vertices: u v\nedge: u v\nedge: v u\n").is_err());
        assert!(parse_graph("vertices: u\nedge: u q\n").is_err());
        assert!(parse_graph("edge: u v\n").is_err());
    }
}
