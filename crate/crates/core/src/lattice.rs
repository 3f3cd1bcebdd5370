//! Bounded finite lattices stored as dense meet/join tables.
//!
//! Elements are the indices `0..n`. Every constructor validates the lattice
//! axioms before handing out a [`Lattice`], so downstream code can rely on the
//! tables without re-checking.

use std::fmt;

use thiserror::Error;

/// Index of a lattice element.
pub type Element = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("invalid size {size}: {reason}")]
    InvalidSize { size: usize, reason: &'static str },
    #[error("element {element} out of range for a lattice of size {size}")]
    OutOfRange { element: usize, size: usize },
    #[error("cover relation contains a cycle through element {element}")]
    Cycle { element: usize },
    #[error("no bottom element: {candidates:?} are all minimal")]
    NoBottom { candidates: Vec<usize> },
    #[error("no top element: {candidates:?} are all maximal")]
    NoTop { candidates: Vec<usize> },
    #[error("not a lattice: elements {x} and {y} have no {bound}")]
    NotALattice {
        x: usize,
        y: usize,
        bound: &'static str,
    },
    #[error("{law} fails at {witness:?}")]
    AxiomViolation {
        law: &'static str,
        witness: Vec<usize>,
    },
    #[error("label index {index} out of range for a lattice of size {size}")]
    LabelOutOfRange { index: usize, size: usize },
}

/// A Hasse diagram: `covers` holds pairs `(a, b)` with `a` covered by `b`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PosetSpec {
    pub size: usize,
    pub covers: Vec<(Element, Element)>,
    pub labels: Option<Vec<String>>,
}

impl PosetSpec {
    pub fn new(size: usize, covers: Vec<(Element, Element)>) -> Self {
        Self {
            size,
            covers,
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.labels = Some(labels);
        self
    }
}

/// Shape tags recognised by constructors that only make sense on one family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Chain,
    QuasiAntichain,
    Other,
}

/// A bounded finite lattice with precomputed meet and join tables.
#[derive(Clone, PartialEq, Eq)]
pub struct Lattice {
    size: usize,
    meet: Vec<Element>,
    join: Vec<Element>,
    bottom: Element,
    top: Element,
    labels: Vec<String>,
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Lattice")
            .field("size", &self.size)
            .field("bottom", &self.bottom)
            .field("top", &self.top)
            .field("labels", &self.labels)
            .finish()
    }
}

impl Lattice {
    /// The chain `a_0 < a_1 < ... < a_{n-1}`, with index `i` standing for `a_i`.
    pub fn chain(n: usize) -> Result<Self, LatticeError> {
        if n == 0 {
            return Err(LatticeError::InvalidSize {
                size: n,
                reason: "a chain needs at least one element",
            });
        }
        let leq = |x: usize, y: usize| x <= y;
        let labels = (0..n).map(|i| format!("a{i}")).collect();
        Self::from_order(n, leq, labels)
    }

    /// The quasi-antichain `M_m`: bottom `0`, atoms `1..=m`, top `m + 1`.
    pub fn quasi_antichain(m: usize) -> Result<Self, LatticeError> {
        if m < 2 {
            return Err(LatticeError::InvalidSize {
                size: m,
                reason: "a quasi-antichain needs at least two atoms (smaller ones are chains)",
            });
        }
        let top = m + 1;
        let leq = |x: usize, y: usize| x == y || x == 0 || y == top;
        let mut labels = vec!["0".to_string()];
        labels.extend((1..=m).map(|i| format!("b{i}")));
        labels.push("1".to_string());
        Self::from_order(m + 2, leq, labels)
    }

    /// The pentagon `N_5`: `0 < a < c < 1` and `0 < b < 1`, indexed `0, a=1, b=2, c=3, 1=4`.
    pub fn pentagon() -> Self {
        let spec = PosetSpec::new(5, vec![(0, 1), (0, 2), (1, 3), (3, 4), (2, 4)])
            .with_labels(["0", "a", "b", "c", "1"].map(String::from).to_vec());
        Self::from_covers(&spec).expect("pentagon is a lattice")
    }

    /// The Boolean lattice of subsets of a `k`-element set; element `i` is the bitmask `i`.
    pub fn boolean_cube(k: u32) -> Result<Self, LatticeError> {
        if k == 0 || k > 4 {
            return Err(LatticeError::InvalidSize {
                size: k as usize,
                reason: "boolean cubes are supported for 1..=4 generators",
            });
        }
        let n = 1usize << k;
        let leq = |x: usize, y: usize| x & y == x;
        let labels = (0..n)
            .map(|i| {
                if i == 0 {
                    "{}".to_string()
                } else {
                    let members: Vec<String> = (0..k)
                        .filter(|b| i >> b & 1 == 1)
                        .map(|b| b.to_string())
                        .collect();
                    format!("{{{}}}", members.join(","))
                }
            })
            .collect();
        Self::from_order(n, leq, labels)
    }

    /// Builds a lattice from a Hasse diagram, rejecting anything that is not a
    /// bounded lattice.
    pub fn from_covers(spec: &PosetSpec) -> Result<Self, LatticeError> {
        let n = spec.size;
        if n == 0 {
            return Err(LatticeError::InvalidSize {
                size: 0,
                reason: "a lattice needs at least one element",
            });
        }
        for &(a, b) in &spec.covers {
            for e in [a, b] {
                if e >= n {
                    return Err(LatticeError::OutOfRange {
                        element: e,
                        size: n,
                    });
                }
            }
            if a == b {
                return Err(LatticeError::Cycle { element: a });
            }
        }
        let labels = match &spec.labels {
            Some(l) if l.len() == n => l.clone(),
            Some(l) => {
                return Err(LatticeError::LabelOutOfRange {
                    index: l.len(),
                    size: n,
                })
            }
            None => (0..n).map(|i| i.to_string()).collect(),
        };

        // Reflexive-transitive closure (Warshall).
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        for &(a, b) in &spec.covers {
            le[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if le[i * n + k] {
                    for j in 0..n {
                        if le[k * n + j] {
                            le[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && le[i * n + j] && le[j * n + i] {
                    return Err(LatticeError::Cycle { element: i });
                }
            }
        }

        let minimal: Vec<usize> = (0..n)
            .filter(|&x| (0..n).all(|y| y == x || !le[y * n + x]))
            .collect();
        if minimal.len() != 1 {
            return Err(LatticeError::NoBottom {
                candidates: minimal,
            });
        }
        let maximal: Vec<usize> = (0..n)
            .filter(|&x| (0..n).all(|y| y == x || !le[x * n + y]))
            .collect();
        if maximal.len() != 1 {
            return Err(LatticeError::NoTop {
                candidates: maximal,
            });
        }

        Self::from_order(n, |x, y| le[x * n + y], labels)
    }

    /// Fills the tables from an order relation by scanning for greatest lower
    /// and least upper bounds.
    fn from_order(
        n: usize,
        leq: impl Fn(usize, usize) -> bool,
        labels: Vec<String>,
    ) -> Result<Self, LatticeError> {
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for x in 0..n {
            for y in x..n {
                let lower: Vec<usize> = (0..n).filter(|&z| leq(z, x) && leq(z, y)).collect();
                let glb = lower
                    .iter()
                    .copied()
                    .find(|&g| lower.iter().all(|&z| leq(z, g)))
                    .ok_or(LatticeError::NotALattice {
                        x,
                        y,
                        bound: "greatest lower bound",
                    })?;
                let upper: Vec<usize> = (0..n).filter(|&z| leq(x, z) && leq(y, z)).collect();
                let lub = upper
                    .iter()
                    .copied()
                    .find(|&u| upper.iter().all(|&z| leq(u, z)))
                    .ok_or(LatticeError::NotALattice {
                        x,
                        y,
                        bound: "least upper bound",
                    })?;
                meet[x * n + y] = glb;
                meet[y * n + x] = glb;
                join[x * n + y] = lub;
                join[y * n + x] = lub;
            }
        }
        let bottom = (0..n).find(|&b| (0..n).all(|x| leq(b, x)));
        let top = (0..n).find(|&t| (0..n).all(|x| leq(x, t)));
        let (bottom, top) = match (bottom, top) {
            (Some(b), Some(t)) => (b, t),
            (None, _) => return Err(LatticeError::NoBottom { candidates: vec![] }),
            (_, None) => return Err(LatticeError::NoTop { candidates: vec![] }),
        };
        Self::from_tables(meet, join, bottom, top, labels)
    }

    /// Wraps raw tables after checking every lattice axiom exhaustively.
    pub fn from_tables(
        meet: Vec<Element>,
        join: Vec<Element>,
        bottom: Element,
        top: Element,
        labels: Vec<String>,
    ) -> Result<Self, LatticeError> {
        let n = labels.len();
        if n == 0 || meet.len() != n * n || join.len() != n * n {
            return Err(LatticeError::InvalidSize {
                size: n,
                reason: "tables must be n x n with one label per element",
            });
        }
        for &e in meet.iter().chain(join.iter()).chain([&bottom, &top]) {
            if e >= n {
                return Err(LatticeError::OutOfRange {
                    element: e,
                    size: n,
                });
            }
        }
        let l = Self {
            size: n,
            meet,
            join,
            bottom,
            top,
            labels,
        };
        l.validate()?;
        Ok(l)
    }

    /// Exhaustive check of commutativity, associativity, idempotency,
    /// absorption and the bounds.
    pub fn validate(&self) -> Result<(), LatticeError> {
        let n = self.size;
        let fail = |law, witness: Vec<usize>| Err(LatticeError::AxiomViolation { law, witness });
        for x in 0..n {
            if self.meet(x, x) != x || self.join(x, x) != x {
                return fail("idempotency", vec![x]);
            }
            if self.meet(self.bottom, x) != self.bottom {
                return fail("bottom is least", vec![x]);
            }
            if self.join(self.top, x) != self.top {
                return fail("top is greatest", vec![x]);
            }
            for y in 0..n {
                if self.meet(x, y) != self.meet(y, x) || self.join(x, y) != self.join(y, x) {
                    return fail("commutativity", vec![x, y]);
                }
                if self.meet(x, self.join(x, y)) != x || self.join(x, self.meet(x, y)) != x {
                    return fail("absorption", vec![x, y]);
                }
                for z in 0..n {
                    if self.meet(x, self.meet(y, z)) != self.meet(self.meet(x, y), z) {
                        return fail("meet associativity", vec![x, y, z]);
                    }
                    if self.join(x, self.join(y, z)) != self.join(self.join(x, y), z) {
                        return fail("join associativity", vec![x, y, z]);
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn bottom(&self) -> Element {
        self.bottom
    }

    #[inline]
    pub fn top(&self) -> Element {
        self.top
    }

    #[inline]
    pub fn meet(&self, x: Element, y: Element) -> Element {
        self.meet[x * self.size + y]
    }

    #[inline]
    pub fn join(&self, x: Element, y: Element) -> Element {
        self.join[x * self.size + y]
    }

    /// Row-major meet table.
    pub fn meet_table(&self) -> &[Element] {
        &self.meet
    }

    pub fn join_table(&self) -> &[Element] {
        &self.join
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: Element) -> &str {
        &self.labels[x]
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.size
    }

    /// `x <= y` in the induced order, without range checks.
    #[inline]
    pub fn le(&self, x: Element, y: Element) -> bool {
        self.meet(x, y) == x
    }

    pub fn leq(&self, x: Element, y: Element) -> Result<bool, LatticeError> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(self.le(x, y))
    }

    pub fn check_element(&self, x: Element) -> Result<(), LatticeError> {
        if x < self.size {
            Ok(())
        } else {
            Err(LatticeError::OutOfRange {
                element: x,
                size: self.size,
            })
        }
    }

    /// `x∧(y∨z) = (x∧y)∨(x∧z)` over all triples.
    pub fn is_distributive(&self) -> bool {
        self.distributivity_witness().is_none()
    }

    /// First triple (in index order) violating the meet-over-join law.
    pub fn distributivity_witness(&self) -> Option<(Element, Element, Element)> {
        let n = self.size;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = self.meet(x, self.join(y, z));
                    let rhs = self.join(self.meet(x, y), self.meet(x, z));
                    if lhs != rhs {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_chain(&self) -> bool {
        self.elements()
            .all(|x| self.elements().all(|y| self.le(x, y) || self.le(y, x)))
    }

    /// `y` covers `x`: `x < y` with nothing strictly between.
    pub fn covers(&self, x: Element, y: Element) -> bool {
        x != y
            && self.le(x, y)
            && self
                .elements()
                .all(|z| z == x || z == y || !(self.le(x, z) && self.le(z, y)))
    }

    /// The Hasse diagram as `(lower, upper)` pairs in lexicographic order.
    pub fn cover_pairs(&self) -> Vec<(Element, Element)> {
        let mut out = Vec::new();
        for x in self.elements() {
            for y in self.elements() {
                if self.covers(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn to_poset_spec(&self) -> PosetSpec {
        PosetSpec::new(self.size, self.cover_pairs()).with_labels(self.labels.clone())
    }

    /// Elements covering the bottom, in index order.
    pub fn atoms(&self) -> Vec<Element> {
        self.elements()
            .filter(|&x| self.covers(self.bottom, x))
            .collect()
    }

    /// True when the lattice has at least four elements and every element
    /// other than the bounds is an atom covered by the top.
    pub fn is_quasi_antichain(&self) -> bool {
        self.size >= 4
            && self
                .elements()
                .filter(|&x| x != self.bottom && x != self.top)
                .all(|x| self.covers(self.bottom, x) && self.covers(x, self.top))
    }

    pub fn shape(&self) -> Shape {
        if self.is_chain() {
            Shape::Chain
        } else if self.is_quasi_antichain() {
            Shape::QuasiAntichain
        } else {
            Shape::Other
        }
    }

    /// Table equality after renaming elements of `self` through `relabel`
    /// (`relabel[x]` is the index in `other` of `x`).
    pub fn eq_under_relabeling(&self, other: &Lattice, relabel: &[Element]) -> bool {
        let n = self.size;
        if other.size != n || relabel.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &r in relabel {
            if r >= n || seen[r] {
                return false;
            }
            seen[r] = true;
        }
        self.elements().all(|x| {
            self.elements().all(|y| {
                relabel[self.meet(x, y)] == other.meet(relabel[x], relabel[y])
                    && relabel[self.join(x, y)] == other.join(relabel[x], relabel[y])
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_tables() {
        let one = Lattice::chain(1).unwrap();
        assert_eq!((one.bottom(), one.top()), (0, 0));

        let l3 = Lattice::chain(3).unwrap();
        assert_eq!(l3.meet(1, 2), 1);
        assert_eq!(l3.join(0, 2), 2);

        let l4 = Lattice::chain(4).unwrap();
        assert!(l4.is_distributive());
        assert!(l4.leq(1, 3).unwrap());
        assert!(matches!(
            Lattice::chain(0),
            Err(LatticeError::InvalidSize { .. })
        ));
    }

    #[test]
    fn quasi_antichain_tables() {
        let m3 = Lattice::quasi_antichain(3).unwrap();
        assert_eq!(m3.size(), 5);
        assert_eq!(m3.meet(1, 2), 0);
        assert_eq!(m3.join(1, 2), 4);
        assert!(!m3.leq(1, 2).unwrap());
        assert!(!m3.is_distributive());
        assert!(m3.is_quasi_antichain());

        let m2 = Lattice::quasi_antichain(2).unwrap();
        assert!(m2.is_distributive());
        assert_eq!(m2.labels(), &["0", "b1", "b2", "1"]);

        for m in [0, 1] {
            assert!(Lattice::quasi_antichain(m).is_err());
        }
    }

    #[test]
    fn atoms_and_coatoms_of_quasi_antichains() {
        for m in 2..=6 {
            let l = Lattice::quasi_antichain(m).unwrap();
            assert_eq!(l.atoms().len(), m);
            let coatoms = l.elements().filter(|&x| l.covers(x, l.top())).count();
            assert_eq!(coatoms, m);
        }
    }

    #[test]
    fn pentagon_is_not_distributive() {
        let n5 = Lattice::pentagon();
        assert_eq!(n5.size(), 5);
        assert!(!n5.is_distributive());
        assert_eq!(n5.shape(), Shape::Other);
    }

    #[test]
    fn no_top_is_reported() {
        let spec = PosetSpec::new(4, vec![(0, 1), (0, 2), (1, 3)]);
        match Lattice::from_covers(&spec) {
            Err(LatticeError::NoTop { candidates }) => assert_eq!(candidates, vec![2, 3]),
            other => panic!("expected NoTop, got {other:?}"),
        }
    }

    #[test]
    fn no_bottom_and_cycles() {
        let spec = PosetSpec::new(3, vec![(0, 2), (1, 2)]);
        assert!(matches!(
            Lattice::from_covers(&spec),
            Err(LatticeError::NoBottom { .. })
        ));
        let spec = PosetSpec::new(3, vec![(0, 1), (1, 2), (2, 1)]);
        assert!(matches!(
            Lattice::from_covers(&spec),
            Err(LatticeError::Cycle { .. })
        ));
        let spec = PosetSpec::new(2, vec![(0, 5)]);
        assert!(matches!(
            Lattice::from_covers(&spec),
            Err(LatticeError::OutOfRange { element: 5, .. })
        ));
    }

    #[test]
    fn missing_join_names_the_pair() {
        // 0 < a, b < c, d < 1 : a and b have two minimal upper bounds.
        let spec = PosetSpec::new(
            6,
            vec![
                (0, 1),
                (0, 2),
                (1, 3),
                (1, 4),
                (2, 3),
                (2, 4),
                (3, 5),
                (4, 5),
            ],
        );
        match Lattice::from_covers(&spec) {
            Err(LatticeError::NotALattice { x: 1, y: 2, bound }) => {
                assert_eq!(bound, "least upper bound")
            }
            other => panic!("expected NotALattice, got {other:?}"),
        }
    }

    #[test]
    fn m3_from_covers_matches_builder() {
        // Atoms listed out of order to force a non-trivial relabeling.
        let spec = PosetSpec::new(5, vec![(4, 0), (4, 1), (4, 2), (0, 3), (1, 3), (2, 3)]);
        let from_file = Lattice::from_covers(&spec).unwrap();
        let built = Lattice::quasi_antichain(3).unwrap();
        assert_eq!(from_file.bottom(), 4);
        assert_eq!(from_file.top(), 3);
        assert!(from_file.eq_under_relabeling(&built, &[1, 2, 3, 4, 0]));
        assert!(!from_file.eq_under_relabeling(&built, &[0, 1, 2, 3, 4]));
    }

    #[test]
    fn chain_round_trips_through_covers() {
        for n in 1..=8 {
            let l = Lattice::chain(n).unwrap();
            let rebuilt = Lattice::from_covers(&l.to_poset_spec()).unwrap();
            assert_eq!(rebuilt, l);
        }
    }

    #[test]
    fn boolean_cube_b3() {
        let b3 = Lattice::boolean_cube(3).unwrap();
        assert_eq!(b3.size(), 8);
        assert!(b3.is_distributive());
        assert_eq!(b3.atoms(), vec![1, 2, 4]);
        assert_eq!(b3.meet(3, 6), 2);
        assert_eq!(b3.join(1, 4), 5);
    }

    #[test]
    fn broken_tables_are_rejected() {
        let l = Lattice::chain(3).unwrap();
        let mut meet = l.meet_table().to_vec();
        meet[1] = 2; // meet(0,1) = 2 breaks commutativity
        let err = Lattice::from_tables(meet, l.join_table().to_vec(), 0, 2, l.labels().to_vec());
        assert!(matches!(err, Err(LatticeError::AxiomViolation { .. })));
    }

    #[test]
    fn leq_out_of_range() {
        let l = Lattice::chain(2).unwrap();
        assert!(l.leq(0, 2).is_err());
        for x in l.elements() {
            assert!(l.leq(l.bottom(), x).unwrap());
        }
    }
}
