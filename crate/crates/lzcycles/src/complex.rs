//! Simplicial complexes over Z2: storage, incidence, chains and connectivity.

use std::collections::HashMap;
use std::fmt;

use petgraph::unionfind::UnionFind;
use thiserror::Error;

/// Index of a simplex inside its [`SimplicialComplex`].
pub type SimplexId = usize;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ComplexError {
    #[error("simplex {0:?} has repeated vertices")]
    MalformedSimplex(Vec<u32>),
    #[error("empty vertex list")]
    EmptySimplex,
    #[error("weight {weight} on {simplex:?} is negative")]
    NegativeWeight { simplex: Vec<u32>, weight: f64 },
    #[error("weight {weight} on {simplex:?} is not finite")]
    NonFiniteWeight { simplex: Vec<u32>, weight: f64 },
    #[error("weight given for {0:?}, which is not in the complex")]
    WeightOnMissingSimplex(Vec<u32>),
}

/// A simplex identified by its strictly increasing vertex labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<u32>);

impl Simplex {
    pub fn new(mut vertices: Vec<u32>) -> Result<Self, ComplexError> {
        if vertices.is_empty() {
            return Err(ComplexError::EmptySimplex);
        }
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(ComplexError::MalformedSimplex(vertices));
        }
        Ok(Simplex(vertices))
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    fn codim1_faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        let k = if n > 1 { n } else { 0 };
        (0..k).map(move |skip| {
            Simplex(
                self.0
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect(),
            )
        })
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Immutable face-closed simplicial complex.
///
/// Simplices are numbered by `(dimension, lexicographic vertex order)`, so the
/// vertices occupy ids `0..num_vertices()` sorted by label, and id order inside
/// one dimension is lexicographic.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    simplices: Vec<Simplex>,
    index: HashMap<Simplex, SimplexId>,
    dim_start: Vec<usize>,
    verts: Vec<Box<[u32]>>,
    faces: Vec<Box<[SimplexId]>>,
    cofaces: Vec<Vec<SimplexId>>,
    weights: Vec<f64>,
}

impl SimplicialComplex {
    /// Builds the face closure of `simplices`. Simplices without an explicit
    /// weight get weight 1.0.
    pub fn build(
        simplices: &[Vec<u32>],
        weights: &[(Vec<u32>, f64)],
    ) -> Result<Self, ComplexError> {
        let mut all: Vec<Simplex> = Vec::new();
        let mut seen: std::collections::HashSet<Simplex> = std::collections::HashSet::new();
        let mut stack: Vec<Simplex> = Vec::new();
        for vs in simplices {
            stack.push(Simplex::new(vs.clone())?);
        }
        while let Some(s) = stack.pop() {
            if seen.contains(&s) {
                continue;
            }
            for f in s.codim1_faces() {
                if !seen.contains(&f) {
                    stack.push(f);
                }
            }
            seen.insert(s.clone());
            all.push(s);
        }
        all.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));

        let n = all.len();
        let mut index = HashMap::with_capacity(n);
        for (i, s) in all.iter().enumerate() {
            index.insert(s.clone(), i);
        }
        let top = all.last().map_or(0, |s| s.dim() + 1);
        let mut dim_start = vec![n; top + 1];
        for (i, s) in all.iter().enumerate().rev() {
            dim_start[s.dim()] = i;
        }
        for d in (0..top).rev() {
            dim_start[d] = dim_start[d].min(dim_start[d + 1]);
        }

        let vertex_index: HashMap<u32, u32> = all
            .iter()
            .take_while(|s| s.dim() == 0)
            .enumerate()
            .map(|(i, s)| (s.0[0], i as u32))
            .collect();
        let verts: Vec<Box<[u32]>> = all
            .iter()
            .map(|s| s.0.iter().map(|v| vertex_index[v]).collect())
            .collect();

        let mut faces = Vec::with_capacity(n);
        let mut cofaces = vec![Vec::new(); n];
        for (i, s) in all.iter().enumerate() {
            let fs: Box<[SimplexId]> = s.codim1_faces().map(|f| index[&f]).collect();
            for &f in fs.iter() {
                cofaces[f].push(i);
            }
            faces.push(fs);
        }

        let mut w = vec![1.0; n];
        for (vs, weight) in weights {
            let s = Simplex::new(vs.clone())?;
            if !weight.is_finite() {
                return Err(ComplexError::NonFiniteWeight {
                    simplex: s.0,
                    weight: *weight,
                });
            }
            if *weight < 0.0 {
                return Err(ComplexError::NegativeWeight {
                    simplex: s.0,
                    weight: *weight,
                });
            }
            match index.get(&s) {
                Some(&id) => w[id] = *weight,
                None => return Err(ComplexError::WeightOnMissingSimplex(s.0)),
            }
        }

        Ok(SimplicialComplex {
            simplices: all,
            index,
            dim_start,
            verts,
            faces,
            cofaces,
            weights: w,
        })
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Largest simplex dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.last().map(Simplex::dim)
    }

    pub fn num_vertices(&self) -> usize {
        self.count(0)
    }

    /// Number of simplices of dimension `d`.
    pub fn count(&self, d: usize) -> usize {
        self.ids_of_dim(d).len()
    }

    pub fn ids_of_dim(&self, d: usize) -> std::ops::Range<SimplexId> {
        if d + 1 >= self.dim_start.len() {
            return self.len()..self.len();
        }
        self.dim_start[d]..self.dim_start[d + 1]
    }

    pub fn simplex(&self, id: SimplexId) -> &Simplex {
        &self.simplices[id]
    }

    pub fn dim_of(&self, id: SimplexId) -> usize {
        self.verts[id].len() - 1
    }

    pub fn id_of(&self, vertices: &[u32]) -> Option<SimplexId> {
        let s = Simplex::new(vertices.to_vec()).ok()?;
        self.index.get(&s).copied()
    }

    /// Vertex indices (ids of the 0-simplices) of a simplex.
    pub fn vertex_ids(&self, id: SimplexId) -> &[u32] {
        &self.verts[id]
    }

    /// Label of the vertex with index `v`.
    pub fn vertex_label(&self, v: usize) -> u32 {
        self.simplices[v].0[0]
    }

    pub fn vertex_index(&self, label: u32) -> Option<usize> {
        self.index.get(&Simplex(vec![label])).copied()
    }

    pub fn faces(&self, id: SimplexId) -> &[SimplexId] {
        &self.faces[id]
    }

    pub fn cofaces(&self, id: SimplexId) -> &[SimplexId] {
        &self.cofaces[id]
    }

    pub fn weight(&self, id: SimplexId) -> f64 {
        self.weights[id]
    }

    /// Returns a copy of the complex with the given weights replaced.
    pub fn with_weights(&self, weights: &[(SimplexId, f64)]) -> Result<Self, ComplexError> {
        let mut out = self.clone();
        for &(id, w) in weights {
            let simplex = self.simplices[id].0.clone();
            if !w.is_finite() {
                return Err(ComplexError::NonFiniteWeight { simplex, weight: w });
            }
            if w < 0.0 {
                return Err(ComplexError::NegativeWeight { simplex, weight: w });
            }
            out.weights[id] = w;
        }
        Ok(out)
    }

    /// The p-simplices having more than two (p+1)-cofaces. Empty means the
    /// complex is a weak (p+1)-pseudomanifold.
    pub fn weak_pseudomanifold_violations(&self, p: usize) -> Vec<SimplexId> {
        self.ids_of_dim(p)
            .filter(|&s| self.cofaces[s].len() > 2)
            .collect()
    }

    pub fn check_weak_pseudomanifold(&self, p: usize) -> Result<(), Vec<SimplexId>> {
        let bad = self.weak_pseudomanifold_violations(p);
        if bad.is_empty() {
            Ok(())
        } else {
            Err(bad)
        }
    }

    /// Z2 boundary of a chain.
    pub fn boundary(&self, c: &Chain) -> Chain {
        if c.dim == 0 {
            return Chain::empty(0);
        }
        let mut all: Vec<SimplexId> = c
            .ids
            .iter()
            .flat_map(|&s| self.faces[s].iter().copied())
            .collect();
        all.sort_unstable();
        Chain {
            dim: c.dim - 1,
            ids: odd_multiplicity(&all),
        }
    }

    /// All faces of the given simplices, including the simplices themselves.
    pub fn closure(&self, ids: impl IntoIterator<Item = SimplexId>) -> SimplexSet {
        let mut set = SimplexSet::new(self.len());
        let mut stack: Vec<SimplexId> = ids.into_iter().collect();
        while let Some(s) = stack.pop() {
            if set.insert(s) {
                stack.extend(self.faces[s].iter().copied());
            }
        }
        set
    }

    /// Every simplex having `v` (a vertex index) as a vertex.
    pub fn star(&self, v: usize) -> Vec<SimplexId> {
        let mut out = vec![v];
        let mut seen = std::collections::HashSet::new();
        seen.insert(v);
        let mut i = 0;
        while i < out.len() {
            let s = out[i];
            for &c in &self.cofaces[s] {
                if seen.insert(c) {
                    out.push(c);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// Simplices whose highest vertex under `rank` is `v`, sorted by
    /// `(dimension, lexicographic)` so every prefix is face-closed relative to
    /// what precedes `v` in the order.
    pub fn lower_star(&self, v: usize, rank: &[usize]) -> Vec<SimplexId> {
        self.star(v)
            .into_iter()
            .filter(|&s| self.verts[s].iter().all(|&u| rank[u as usize] <= rank[v]))
            .collect()
    }

    /// Simplices whose lowest vertex under `rank` is `v`, in `(dimension,
    /// lexicographic)` order.
    pub fn upper_star(&self, v: usize, rank: &[usize]) -> Vec<SimplexId> {
        self.star(v)
            .into_iter()
            .filter(|&s| self.verts[s].iter().all(|&u| rank[u as usize] >= rank[v]))
            .collect()
    }

    /// Partition of `sigma` (all of dimension `q >= 1`) into q-connected
    /// components. Two q-simplices are adjacent when they share a (q-1)-face
    /// accepted by `allowed_face`. Components are sorted by smallest id.
    pub fn q_connected_components(
        &self,
        sigma: &[SimplexId],
        allowed_face: impl Fn(SimplexId) -> bool,
    ) -> Vec<Vec<SimplexId>> {
        let local: HashMap<SimplexId, usize> =
            sigma.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut uf = UnionFind::<usize>::new(sigma.len());
        for (i, &s) in sigma.iter().enumerate() {
            for &f in self.faces[s].iter() {
                if !allowed_face(f) {
                    continue;
                }
                for &c in &self.cofaces[f] {
                    if let Some(&j) = local.get(&c) {
                        uf.union(i, j);
                    }
                }
            }
        }
        let mut groups: HashMap<usize, Vec<SimplexId>> = HashMap::new();
        for (i, &s) in sigma.iter().enumerate() {
            groups.entry(uf.find(i)).or_default().push(s);
        }
        let mut out: Vec<Vec<SimplexId>> = groups
            .into_values()
            .map(|mut g| {
                g.sort_unstable();
                g
            })
            .collect();
        out.sort();
        out
    }

    /// Euler characteristic.
    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.dim().unwrap_or(0))
            .map(|d| {
                let c = self.count(d) as i64;
                if d % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .sum()
    }
}

/// Elements of a sorted slice appearing an odd number of times.
fn odd_multiplicity(sorted: &[SimplexId]) -> Vec<SimplexId> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            out.push(sorted[i]);
        }
        i = j;
    }
    out
}

/// Symmetric difference of two sorted, duplicate-free slices.
pub fn sym_diff(a: &[SimplexId], b: &[SimplexId]) -> Vec<SimplexId> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// A Z2 chain: a set of simplices of one dimension, summed by symmetric
/// difference. Ids are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Chain {
    dim: usize,
    ids: Vec<SimplexId>,
}

impl Chain {
    pub fn empty(dim: usize) -> Self {
        Chain {
            dim,
            ids: Vec::new(),
        }
    }

    /// Builds a chain; ids listed an even number of times cancel.
    pub fn from_ids(dim: usize, ids: impl IntoIterator<Item = SimplexId>) -> Self {
        let mut v: Vec<SimplexId> = ids.into_iter().collect();
        v.sort_unstable();
        Chain {
            dim,
            ids: odd_multiplicity(&v),
        }
    }

    pub(crate) fn from_sorted(dim: usize, ids: Vec<SimplexId>) -> Self {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        Chain { dim, ids }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ids(&self) -> &[SimplexId] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, id: SimplexId) -> bool {
        self.ids.binary_search(&id).is_ok()
    }

    pub fn add(&self, other: &Chain) -> Chain {
        debug_assert!(self.is_empty() || other.is_empty() || self.dim == other.dim);
        Chain {
            dim: self.dim.max(other.dim),
            ids: sym_diff(&self.ids, &other.ids),
        }
    }

    pub fn add_assign(&mut self, other: &Chain) {
        if other.is_empty() {
            return;
        }
        self.dim = self.dim.max(other.dim);
        self.ids = sym_diff(&self.ids, &other.ids);
    }

    pub fn weight(&self, cx: &SimplicialComplex) -> f64 {
        self.ids.iter().map(|&s| cx.weight(s)).sum()
    }

    pub fn is_subset_of(&self, set: &SimplexSet) -> bool {
        self.ids.iter().all(|&s| set.contains(s))
    }

    /// The part of this chain lying in `set`.
    pub fn restrict(&self, set: &SimplexSet) -> Chain {
        Chain {
            dim: self.dim,
            ids: self
                .ids
                .iter()
                .copied()
                .filter(|&s| set.contains(s))
                .collect(),
        }
    }

    pub fn to_vertex_lists(&self, cx: &SimplicialComplex) -> Vec<Vec<u32>> {
        self.ids
            .iter()
            .map(|&s| cx.simplex(s).vertices().to_vec())
            .collect()
    }
}

/// A set of simplices of one ambient complex, not necessarily face-closed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexSet {
    member: Vec<bool>,
    count: usize,
}

impl SimplexSet {
    pub fn new(ambient_len: usize) -> Self {
        SimplexSet {
            member: vec![false; ambient_len],
            count: 0,
        }
    }

    pub fn full(ambient_len: usize) -> Self {
        SimplexSet {
            member: vec![true; ambient_len],
            count: ambient_len,
        }
    }

    pub fn from_ids(ambient_len: usize, ids: impl IntoIterator<Item = SimplexId>) -> Self {
        let mut s = SimplexSet::new(ambient_len);
        for id in ids {
            s.insert(id);
        }
        s
    }

    pub fn from_predicate(ambient_len: usize, pred: impl Fn(SimplexId) -> bool) -> Self {
        let member: Vec<bool> = (0..ambient_len).map(pred).collect();
        let count = member.iter().filter(|&&b| b).count();
        SimplexSet { member, count }
    }

    pub fn contains(&self, id: SimplexId) -> bool {
        self.member[id]
    }

    /// Returns true when `id` was not present before.
    pub fn insert(&mut self, id: SimplexId) -> bool {
        if self.member[id] {
            false
        } else {
            self.member[id] = true;
            self.count += 1;
            true
        }
    }

    pub fn remove(&mut self, id: SimplexId) -> bool {
        if self.member[id] {
            self.member[id] = false;
            self.count -= 1;
            true
        } else {
            false
        }
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn ambient_len(&self) -> usize {
        self.member.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = SimplexId> + '_ {
        self.member
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i)
    }

    pub fn ids_of_dim(&self, cx: &SimplicialComplex, d: usize) -> Vec<SimplexId> {
        cx.ids_of_dim(d).filter(|&s| self.member[s]).collect()
    }

    pub fn union(&self, other: &SimplexSet) -> SimplexSet {
        SimplexSet::from_predicate(self.member.len(), |i| self.member[i] || other.member[i])
    }

    pub fn intersection(&self, other: &SimplexSet) -> SimplexSet {
        SimplexSet::from_predicate(self.member.len(), |i| self.member[i] && other.member[i])
    }

    pub fn difference(&self, other: &SimplexSet) -> SimplexSet {
        SimplexSet::from_predicate(self.member.len(), |i| self.member[i] && !other.member[i])
    }

    pub fn is_subset_of(&self, other: &SimplexSet) -> bool {
        self.iter().all(|i| other.member[i])
    }

    pub fn is_disjoint(&self, other: &SimplexSet) -> bool {
        self.iter().all(|i| !other.member[i])
    }

    /// Whether every face of every member is a member.
    pub fn is_face_closed(&self, cx: &SimplicialComplex) -> bool {
        self.iter()
            .all(|s| cx.faces(s).iter().all(|&f| self.member[f]))
    }
}
