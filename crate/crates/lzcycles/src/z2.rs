//! Linear algebra over Z2 for homology queries on subcomplexes.

use std::collections::HashMap;

use thiserror::Error;

use crate::complex::{sym_diff, Chain, SimplexId, SimplexSet, SimplicialComplex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Z2Error {
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("chain is not contained in the subcomplex")]
    NotContained,
}

/// Column echelon form over Z2 with sparse columns. Each stored column has a
/// distinct lowest-order pivot (its largest index), and remembers which input
/// columns were summed to produce it.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    cols: Vec<Vec<usize>>,
    track: Vec<Vec<usize>>,
    pivot: HashMap<usize, usize>,
    inputs: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of independent columns stored.
    pub fn rank(&self) -> usize {
        self.pivot.len()
    }

    /// Reduces `v` against the stored columns. Returns the residual and the
    /// set of input columns whose sum was added to `v`.
    pub fn reduce(&self, mut v: Vec<usize>) -> (Vec<usize>, Vec<usize>) {
        let mut used: Vec<usize> = Vec::new();
        while let Some(&low) = v.last() {
            match self.pivot.get(&low) {
                Some(&c) => {
                    v = sym_diff(&v, &self.cols[c]);
                    used = sym_diff(&used, &self.track[c]);
                }
                None => break,
            }
        }
        (v, used)
    }

    /// Adds input column `v` (sorted indices). Returns its residual and the
    /// input columns summed into it; the residual is empty when `v` depends on
    /// earlier inputs, in which case `used` plus this input is a relation.
    pub fn push(&mut self, v: Vec<usize>) -> (Vec<usize>, Vec<usize>) {
        let me = self.inputs;
        self.inputs += 1;
        let (res, mut used) = self.reduce(v);
        used = sym_diff(&used, &[me]);
        if let Some(&low) = res.last() {
            self.pivot.insert(low, self.cols.len());
            self.cols.push(res.clone());
            self.track.push(used.clone());
        }
        (res, used)
    }

    pub fn contains(&self, v: Vec<usize>) -> bool {
        self.reduce(v).0.is_empty()
    }
}

/// The (p+1)-boundary space of a subcomplex, ready to answer repeated
/// null-homology queries for p-cycles.
pub struct BoundarySpace<'a> {
    cx: &'a SimplicialComplex,
    sub: &'a SimplexSet,
    p: usize,
    cofacets: Vec<SimplexId>,
    ech: Echelon,
}

impl<'a> BoundarySpace<'a> {
    pub fn new(cx: &'a SimplicialComplex, sub: &'a SimplexSet, p: usize) -> Self {
        let cofacets: Vec<SimplexId> = sub.ids_of_dim(cx, p + 1);
        let mut ech = Echelon::new();
        for &t in &cofacets {
            let mut col: Vec<usize> = cx.faces(t).to_vec();
            col.sort_unstable();
            ech.push(col);
        }
        BoundarySpace {
            cx,
            sub,
            p,
            cofacets,
            ech,
        }
    }

    pub fn rank(&self) -> usize {
        self.ech.rank()
    }

    /// Returns a (p+1)-chain of the subcomplex with boundary `z`, or `None`
    /// when `z` is not a boundary there.
    pub fn witness(&self, z: &Chain) -> Result<Option<Chain>, Z2Error> {
        if !z.is_empty() && z.dim() != self.p {
            return Err(Z2Error::NotACycle);
        }
        if !z.is_subset_of(self.sub) {
            return Err(Z2Error::NotContained);
        }
        if !self.cx.boundary(z).is_empty() {
            return Err(Z2Error::NotACycle);
        }
        let (res, used) = self.ech.reduce(z.ids().to_vec());
        if !res.is_empty() {
            return Ok(None);
        }
        Ok(Some(Chain::from_ids(
            self.p + 1,
            used.into_iter().map(|i| self.cofacets[i]),
        )))
    }

    pub fn is_boundary(&self, z: &Chain) -> Result<bool, Z2Error> {
        Ok(self.witness(z)?.is_some())
    }
}

/// Whether the p-cycle `z` bounds in `sub`, with a witness (p+1)-chain.
pub fn is_null_homologous(
    cx: &SimplicialComplex,
    sub: &SimplexSet,
    z: &Chain,
) -> Result<Option<Chain>, Z2Error> {
    BoundarySpace::new(cx, sub, z.dim()).witness(z)
}

pub fn are_homologous(
    cx: &SimplicialComplex,
    sub: &SimplexSet,
    z1: &Chain,
    z2: &Chain,
) -> Result<bool, Z2Error> {
    let p = z1.dim().max(z2.dim());
    let mut sum = z1.add(z2);
    if sum.is_empty() {
        sum = Chain::empty(p);
    }
    Ok(BoundarySpace::new(cx, sub, p).witness(&sum)?.is_some())
}

fn boundary_rank(cx: &SimplicialComplex, sub: &SimplexSet, q: usize) -> usize {
    if q == 0 {
        return 0;
    }
    let mut ech = Echelon::new();
    for s in sub.ids_of_dim(cx, q) {
        let mut col = cx.faces(s).to_vec();
        col.sort_unstable();
        ech.push(col);
    }
    ech.rank()
}

/// Z2 Betti number `dim ker d_p - rank d_{p+1}` of a subcomplex.
pub fn homology_rank(cx: &SimplicialComplex, sub: &SimplexSet, p: usize) -> usize {
    let cp = sub.ids_of_dim(cx, p).len();
    cp - boundary_rank(cx, sub, p) - boundary_rank(cx, sub, p + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn octahedron() -> SimplicialComplex {
        let tris = vec![
            vec![0, 2, 4],
            vec![0, 3, 4],
            vec![1, 2, 4],
            vec![1, 3, 4],
            vec![0, 2, 5],
            vec![0, 3, 5],
            vec![1, 2, 5],
            vec![1, 3, 5],
        ];
        SimplicialComplex::build(&tris, &[]).unwrap()
    }

    fn equator(k: &SimplicialComplex) -> Chain {
        Chain::from_ids(
            1,
            [[0, 2], [2, 1], [1, 3], [3, 0]]
                .iter()
                .map(|e| k.id_of(e).unwrap()),
        )
    }

    #[test]
    fn equator_bounds_on_sphere() {
        let k = octahedron();
        let all = SimplexSet::full(k.len());
        let z = equator(&k);
        let w = is_null_homologous(&k, &all, &z).unwrap().unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(k.boundary(&w), z);
    }

    #[test]
    fn equator_does_not_bound_without_poles() {
        let k = octahedron();
        let keep = SimplexSet::from_predicate(k.len(), |s| {
            let v = k.simplex(s).vertices();
            !v.contains(&4) && !v.contains(&5)
        });
        let z = equator(&k);
        assert_eq!(is_null_homologous(&k, &keep, &z).unwrap(), None);
        assert_eq!(homology_rank(&k, &keep, 1), 1);
    }

    #[test]
    fn errors_and_trivial_cases() {
        let k = octahedron();
        let all = SimplexSet::full(k.len());
        let e = Chain::from_ids(1, [k.id_of(&[0, 2]).unwrap()]);
        assert_eq!(is_null_homologous(&k, &all, &e), Err(Z2Error::NotACycle));
        let small = SimplexSet::from_ids(k.len(), [0]);
        assert_eq!(
            is_null_homologous(&k, &small, &equator(&k)),
            Err(Z2Error::NotContained)
        );
        let w = is_null_homologous(&k, &small, &Chain::empty(1)).unwrap();
        assert_eq!(w, Some(Chain::empty(2)));
        let z = equator(&k);
        assert!(are_homologous(&k, &small.union(&all), &z, &z).unwrap());
    }

    #[test]
    fn betti_numbers() {
        let k = octahedron();
        let all = SimplexSet::full(k.len());
        assert_eq!(homology_rank(&k, &all, 1), 0);
        assert_eq!(homology_rank(&k, &all, 2), 1);
        assert_eq!(homology_rank(&k, &all, 0), 1);
        let pt = SimplicialComplex::build(&[vec![7]], &[]).unwrap();
        assert_eq!(homology_rank(&pt, &SimplexSet::full(1), 1), 0);
    }

    #[test]
    fn echelon_relation() {
        let mut e = Echelon::new();
        e.push(vec![0, 1]);
        e.push(vec![1, 2]);
        let (res, used) = e.push(vec![0, 2]);
        assert!(res.is_empty());
        assert_eq!(used, vec![0, 1, 2]);
        assert_eq!(e.rank(), 2);
    }
}
