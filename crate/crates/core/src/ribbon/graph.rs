use std::collections::BTreeMap;

use serde_json::{json, Value};

/// Names of the graphs in the supported chi = -1 universe (plus the Mukai and
/// coproduct trees, which are genus-zero service graphs).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GraphName {
    /// One trivalent vertex, one input leg, two output legs (`iota S_{0,3}`).
    Tripod,
    /// Theta graph with an input leg: three vertices, one boundary, genus one.
    ThetaIn,
    /// One five-valent vertex with two interleaved loops and an input leg.
    WedgeIn,
    /// Two-input genus-zero graph computing the chain-level Mukai pairing.
    MukaiGraph,
    /// One input, two outputs; same underlying tree as the tripod, no
    /// decorations (the coproduct on shifted homology).
    Coproduct,
    /// Self-sewing of the tripod: bookkeeping cell for `Delta(S_{0,3})`.
    LollipopIn,
    /// The common boundary cell of the two genus-one graphs.
    BridgeIn,
}

impl GraphName {
    pub fn as_str(self) -> &'static str {
        match self {
            GraphName::Tripod => "tripod",
            GraphName::ThetaIn => "theta",
            GraphName::WedgeIn => "wedge",
            GraphName::MukaiGraph => "mukai",
            GraphName::Coproduct => "coproduct",
            GraphName::LollipopIn => "lollipop",
            GraphName::BridgeIn => "bridge",
        }
    }
}

/// Half-edge combinatorial ribbon graph with marked input/output legs and
/// u-decorations per leg.
///
/// `vertices[v]` lists the half-edges at `v` in cyclic order; `partner[h]`
/// is the edge involution, with legs self-paired. Boundary faces are walked
/// by `h -> sigma(partner(h))` where `sigma` is next-in-cyclic-order.
#[derive(Clone, Debug)]
pub struct RibbonGraph {
    pub name: GraphName,
    pub vertices: Vec<Vec<usize>>,
    pub partner: Vec<usize>,
    /// Input legs (half-edge ids) in input order.
    pub inputs: Vec<usize>,
    /// Output legs (half-edge ids) in output order.
    pub outputs: Vec<usize>,
    /// Ordered internal edges as (half, half) pairs; the label convention
    /// puts the basis element on the first half and its dual on the second.
    pub edges: Vec<(usize, usize)>,
    /// u-decoration exponents per input/output leg (negative powers of u).
    pub decorations: BTreeMap<usize, i32>,
    /// Genus and boundary count, for bookkeeping and sewing signatures.
    pub genus: u32,
    pub boundaries: u32,
}

impl RibbonGraph {
    fn vertex_of(&self, h: usize) -> usize {
        self.vertices
            .iter()
            .position(|v| v.contains(&h))
            .expect("half-edge belongs to a vertex")
    }

    /// Next half-edge in cyclic order at the same vertex.
    fn sigma(&self, h: usize) -> usize {
        let v = &self.vertices[self.vertex_of(h)];
        let i = v.iter().position(|&x| x == h).unwrap();
        v[(i + 1) % v.len()]
    }

    /// Boundary walk starting at half-edge `h0`: the sequence of half-edges
    /// visited by `h -> sigma(partner(h))`.
    pub fn face_from(&self, h0: usize) -> Vec<usize> {
        let mut walk = vec![h0];
        let mut h = h0;
        loop {
            h = self.sigma(self.partner[h]);
            if h == h0 {
                break;
            }
            walk.push(h);
            assert!(walk.len() <= 4 * self.partner.len(), "face walk diverged");
        }
        walk
    }

    /// Number of distinct boundary faces.
    pub fn count_faces(&self) -> usize {
        let n = self.partner.len();
        let mut seen = vec![false; n];
        let mut faces = 0;
        for h in 0..n {
            if seen[h] {
                continue;
            }
            faces += 1;
            for x in self.face_from(h) {
                seen[x] = true;
            }
        }
        faces
    }

    /// The corner sequence along the boundary containing the given input leg,
    /// starting immediately after the leg. A corner is `(vertex, position)`:
    /// factors placed there become vertex arguments directly after the
    /// half-edge at that position.
    pub fn input_corners(&self, leg: usize) -> Vec<(usize, usize)> {
        let rev_walk = std::env::var("CATGW_WALK").map(|v| v == "1").unwrap_or(false);
        let walk = self.face_from(leg);
        let mut corners = Vec::with_capacity(walk.len());
        for w in 0..walk.len() {
            let h = walk[w];
            // Transition h -> sigma(partner(h)): corner at the vertex of
            // partner(h), after partner(h) in its cyclic list.
            let p = self.partner[h];
            let v = self.vertex_of(p);
            let pos = self.vertices[v].iter().position(|&x| x == p).unwrap();
            corners.push((v, pos));
        }
        if rev_walk {
            // Opposite boundary orientation: the same physical corners in
            // reversed traversal order.
            corners.reverse();
        }
        corners
    }

    /// The half-edge symbols interleaving the corners of the input boundary,
    /// aligned with [`Self::input_corners`]: entry `c` is the half-edge
    /// passed right after corner `c` (`None` on returning to the leg).
    pub fn input_interleave(&self, leg: usize) -> Vec<Option<usize>> {
        let rev_walk = std::env::var("CATGW_WALK").map(|v| v == "1").unwrap_or(false);
        let walk = self.face_from(leg);
        let n = walk.len();
        let mut out = Vec::with_capacity(n);
        if !rev_walk {
            for c in 0..n {
                let h = walk[(c + 1) % n];
                out.push(if h == leg { None } else { Some(h) });
            }
        } else {
            // Reversed traversal: after reversed-corner c comes walk[n-1-c].
            for c in 0..n {
                let h = walk[n - 1 - c];
                out.push(if h == leg { None } else { Some(h) });
            }
        }
        out
    }

    pub fn tripod() -> RibbonGraph {
        // Half-edges: 1 = input, 0/2 = outputs at one vertex. Cyclic order
        // (in, out1, out2) so that c3(xi, idO, idO) carries the positive
        // sign.
        RibbonGraph {
            name: GraphName::Tripod,
            vertices: vec![vec![1, 0, 2]],
            partner: vec![0, 1, 2],
            inputs: vec![1],
            outputs: vec![0, 2],
            edges: vec![],
            decorations: BTreeMap::from([(1, -1), (0, -1), (2, -1)]),
            genus: 0,
            boundaries: 3,
        }
    }

    pub fn coproduct() -> RibbonGraph {
        let mut g = Self::tripod();
        g.name = GraphName::Coproduct;
        g.decorations.clear();
        g
    }

    /// Theta graph with an input leg; a single boundary of genus one.
    ///
    /// Vertices: `w = [in, h1, h6]`, `u1 = [h2, h3, c1]`, `u2 = [h4, c2, h5]`
    /// with edges `(h1,h2), (h3,h4), (h5,h6), (c1,c2)`.
    pub fn theta_in() -> RibbonGraph {
        // ids: 0 = in, 1 = h1, 2 = h2, 3 = h3, 4 = h4, 5 = h5, 6 = h6,
        //      7 = c1, 8 = c2.
        let g = RibbonGraph {
            name: GraphName::ThetaIn,
            vertices: vec![vec![0, 1, 6], vec![2, 3, 7], vec![4, 8, 5]],
            partner: vec![0, 2, 1, 4, 3, 6, 5, 8, 7],
            inputs: vec![0],
            outputs: vec![],
            edges: vec![(1, 2), (3, 4), (5, 6), (7, 8)],
            decorations: BTreeMap::from([(0, -2)]),
            genus: 1,
            boundaries: 1,
        };
        debug_assert_eq!(g.count_faces(), 1);
        g
    }

    /// One five-valent vertex with cyclic order (in, x, y, xbar, ybar): two
    /// interleaved loops, genus one, one boundary.
    pub fn wedge_in() -> RibbonGraph {
        // ids: 0 = in, 1 = x, 2 = y, 3 = xbar, 4 = ybar.
        let g = RibbonGraph {
            name: GraphName::WedgeIn,
            vertices: vec![vec![0, 1, 2, 3, 4]],
            partner: vec![0, 3, 4, 1, 2],
            inputs: vec![0],
            outputs: vec![],
            edges: vec![(1, 3), (2, 4)],
            decorations: BTreeMap::from([(0, -1)]),
            genus: 1,
            boundaries: 1,
        };
        debug_assert_eq!(g.count_faces(), 1);
        g
    }

    /// Genus-zero two-input graph: two trivalent vertices joined by two
    /// edges (an annulus with one cross on each boundary circle).
    pub fn mukai_graph() -> RibbonGraph {
        // ids: 0 = in1, 1 = a, 2 = b (at v1); 3 = in2, 4 = a', 5 = b' (at v2).
        let g = RibbonGraph {
            name: GraphName::MukaiGraph,
            vertices: vec![vec![0, 1, 2], vec![3, 4, 5]],
            partner: vec![0, 4, 5, 3, 1, 2],
            inputs: vec![0, 3],
            outputs: vec![],
            edges: vec![(1, 4), (2, 5)],
            decorations: BTreeMap::new(),
            genus: 0,
            boundaries: 2,
        };
        debug_assert_eq!(g.count_faces(), 2);
        g
    }

    /// Bookkeeping cell: the tripod with its two outputs twist-sewn (the
    /// one-parameter twist family, a degree-one cell). Formal: it indexes the
    /// boundary tables of the master equation and is never evaluated on
    /// chains, so it carries no half-edge data.
    pub fn lollipop_in() -> RibbonGraph {
        RibbonGraph {
            name: GraphName::LollipopIn,
            vertices: vec![],
            partner: vec![],
            inputs: vec![],
            outputs: vec![],
            edges: vec![],
            decorations: BTreeMap::new(),
            genus: 1,
            boundaries: 1,
        }
    }

    /// Bookkeeping cell shared by the boundary tables of the two genus-one
    /// graphs; formal like [`Self::lollipop_in`].
    pub fn bridge_in() -> RibbonGraph {
        RibbonGraph {
            name: GraphName::BridgeIn,
            vertices: vec![],
            partner: vec![],
            inputs: vec![],
            outputs: vec![],
            edges: vec![],
            decorations: BTreeMap::new(),
            genus: 1,
            boundaries: 1,
        }
    }

    pub fn by_name(name: GraphName) -> RibbonGraph {
        match name {
            GraphName::Tripod => Self::tripod(),
            GraphName::ThetaIn => Self::theta_in(),
            GraphName::WedgeIn => Self::wedge_in(),
            GraphName::MukaiGraph => Self::mukai_graph(),
            GraphName::Coproduct => Self::coproduct(),
            GraphName::LollipopIn => Self::lollipop_in(),
            GraphName::BridgeIn => Self::bridge_in(),
        }
    }

    /// Serialization: half-edge incidence with cyclic orders and decorations.
    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name.as_str(),
            "vertices": self.vertices,
            "partner": self.partner,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "edges": self.edges,
            "decorations": self.decorations.iter().map(|(h, k)| json!([h, k])).collect::<Vec<_>>(),
            "genus": self.genus,
            "boundaries": self.boundaries,
        })
    }
}
