use crate::delta::{DeltaComplex, DeltaError, SimplexRef};

/// A subcomplex of a fixed parent, stored as per-dimension membership flags
/// sized like the parent. Closed under faces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subcomplex {
    members: Vec<Vec<bool>>,
}

impl Subcomplex {
    pub fn empty(x: &DeltaComplex) -> Self {
        Subcomplex { members: (0..x.num_dims()).map(|n| vec![false; x.count(n)]).collect() }
    }

    pub fn full(x: &DeltaComplex) -> Self {
        Subcomplex { members: (0..x.num_dims()).map(|n| vec![true; x.count(n)]).collect() }
    }

    /// Exactly the given simplices; fails if the set is not closed.
    pub fn from_simplices(x: &DeltaComplex, simplices: &[SimplexRef]) -> Result<Self, DeltaError> {
        let mut s = Self::empty(x);
        for &(n, i) in simplices {
            if !x.contains((n, i)) {
                return Err(DeltaError::SimplexOutOfRange(n, i));
            }
            s.members[n][i] = true;
        }
        s.check_closed(x)?;
        Ok(s)
    }

    /// Smallest subcomplex containing the given simplices.
    pub fn closure(x: &DeltaComplex, simplices: &[SimplexRef]) -> Result<Self, DeltaError> {
        let mut s = Self::empty(x);
        for &(n, i) in simplices {
            if !x.contains((n, i)) {
                return Err(DeltaError::SimplexOutOfRange(n, i));
            }
            s.members[n][i] = true;
        }
        for n in (1..x.num_dims()).rev() {
            for i in 0..x.count(n) {
                if s.members[n][i] {
                    for &f in x.faces(n, i) {
                        s.members[n - 1][f] = true;
                    }
                }
            }
        }
        Ok(s)
    }

    pub fn from_flags(x: &DeltaComplex, members: Vec<Vec<bool>>) -> Result<Self, DeltaError> {
        let s = Subcomplex { members };
        s.check_shape(x)?;
        s.check_closed(x)?;
        Ok(s)
    }

    pub fn check_shape(&self, x: &DeltaComplex) -> Result<(), DeltaError> {
        if self.members.len() != x.num_dims() || self.members.iter().enumerate().any(|(n, m)| m.len() != x.count(n)) {
            return Err(DeltaError::ParentMismatch);
        }
        Ok(())
    }

    fn check_closed(&self, x: &DeltaComplex) -> Result<(), DeltaError> {
        for n in 1..self.members.len() {
            for (i, &m) in self.members[n].iter().enumerate() {
                if m {
                    if let Some(&face) = x.faces(n, i).iter().find(|&&f| !self.members[n - 1][f]) {
                        return Err(DeltaError::NotClosed { dim: n, index: i, face });
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn contains(&self, n: usize, i: usize) -> bool {
        self.members.get(n).is_some_and(|m| m[i])
    }

    pub fn count(&self, n: usize) -> usize {
        self.members.get(n).map_or(0, |m| m.iter().filter(|&&b| b).count())
    }

    pub fn total(&self) -> usize {
        (0..self.members.len()).map(|n| self.count(n)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.members.iter().all(|m| m.iter().all(|&b| !b))
    }

    /// Top dimension of a member simplex.
    pub fn dim(&self) -> Option<usize> {
        (0..self.members.len()).rev().find(|&n| self.members[n].iter().any(|&b| b))
    }

    pub fn indices(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        self.members.get(n).into_iter().flat_map(|m| m.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i))
    }

    pub fn simplices(&self) -> Vec<SimplexRef> {
        (0..self.members.len()).flat_map(|n| self.indices(n).map(move |i| (n, i))).collect()
    }

    pub fn num_dims(&self) -> usize {
        self.members.len()
    }

    fn zip_with(&self, other: &Subcomplex, f: impl Fn(bool, bool) -> bool) -> Subcomplex {
        assert_eq!(self.members.len(), other.members.len(), "subcomplexes of different parents");
        Subcomplex {
            members: self
                .members
                .iter()
                .zip(&other.members)
                .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect())
                .collect(),
        }
    }

    pub fn union(&self, other: &Subcomplex) -> Subcomplex {
        self.zip_with(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &Subcomplex) -> Subcomplex {
        self.zip_with(other, |a, b| a && b)
    }

    pub fn is_subset(&self, other: &Subcomplex) -> bool {
        self.members.len() == other.members.len()
            && self.members.iter().zip(&other.members).all(|(a, b)| a.iter().zip(b).all(|(&x, &y)| !x || y))
    }

    /// Connected components, ordered by their smallest vertex index.
    pub fn components(&self, x: &DeltaComplex) -> Vec<Subcomplex> {
        let nv = x.count(0);
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(p: &mut [usize], mut a: usize) -> usize {
            while p[a] != a {
                p[a] = p[p[a]];
                a = p[a];
            }
            a
        }
        for e in self.indices(1) {
            let (a, b) = (x.face(1, e, 1), x.face(1, e, 0));
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
                parent[hi] = lo;
            }
        }
        let mut comp_of_root: Vec<Option<usize>> = vec![None; nv];
        let mut comps: Vec<Subcomplex> = Vec::new();
        for v in self.indices(0).collect::<Vec<_>>() {
            let r = find(&mut parent, v);
            if comp_of_root[r].is_none() {
                comp_of_root[r] = Some(comps.len());
                comps.push(Subcomplex::empty(x));
            }
        }
        for n in 0..self.members.len() {
            for i in self.indices(n).collect::<Vec<_>>() {
                let v = if n == 0 { i } else { x.back_face(n, i, 0) };
                let r = find(&mut parent, v);
                let c = comp_of_root[r].expect("vertex of a member simplex is a member");
                comps[c].members[n][i] = true;
            }
        }
        comps
    }
}
