//! Exhaustive enumeration of weight-`w` operators with incremental pruning.
//!
//! Images are assigned in ascending element order. A pair `(x, y)` is checked
//! as soon as `d(x)`, `d(y)` and `d(x∧y)` are all known, i.e. at depth
//! `max(x, y, x∧y)`. Every pair is checked exactly once along each branch, so a
//! completed assignment is a member and every member is reached.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::formulas::Count;
use crate::lattice::{Element, Lattice};
use crate::operator::{identity_at, weight_violation, Operator, Weight};

/// Default largest lattice the enumerator accepts without an override.
pub const DEFAULT_MAX_SIZE: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("lattice of size {size} exceeds the enumeration budget of {limit} elements")]
    BudgetExceeded { size: usize, limit: usize },
    #[error(
        "constraint references element {element} or value {value}, out of range for size {size}"
    )]
    ConstraintOutOfRange {
        element: usize,
        value: usize,
        size: usize,
    },
    #[error("element {element} has more than one required image")]
    ConflictingConstraint { element: usize },
}

/// Size limit for brute-force enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_size: Option<usize>,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_size: Some(DEFAULT_MAX_SIZE),
        }
    }
}

impl Budget {
    pub fn at_most(max_size: usize) -> Self {
        Self {
            max_size: Some(max_size),
        }
    }

    pub fn unlimited() -> Self {
        Self { max_size: None }
    }

    pub fn admit(&self, size: usize) -> Result<(), EnumerateError> {
        match self.max_size {
            Some(limit) if size > limit => Err(EnumerateError::BudgetExceeded { size, limit }),
            _ => Ok(()),
        }
    }
}

/// How the search space is traversed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Depth-first with incremental identity checks.
    #[default]
    Pruned,
    /// Every map satisfying the constraints, each checked in full afterwards.
    Unpruned,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Partitioning {
    #[default]
    Sequential,
    /// One task per value of `d(0)`, merged back in order.
    ByFirstImage,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EnumerationOptions {
    pub strategy: Strategy,
    pub partitioning: Partitioning,
    pub budget: Budget,
}

/// Which difference operators to count: a lattice, a weight, fixed images
/// `d(j) = i` and lower bounds `d(x) >= y`.
#[derive(Debug, Clone)]
pub struct CountQuery<'a> {
    pub lattice: &'a Lattice,
    pub weight: Weight,
    pub fixed: Vec<(Element, Element)>,
    pub lower_bounds: Vec<(Element, Element)>,
}

impl<'a> CountQuery<'a> {
    pub fn new(lattice: &'a Lattice, weight: Weight) -> Self {
        Self {
            lattice,
            weight,
            fixed: Vec::new(),
            lower_bounds: Vec::new(),
        }
    }

    /// Requires `d(element) = image`.
    pub fn fix(mut self, element: Element, image: Element) -> Self {
        self.fixed.push((element, image));
        self
    }

    /// Requires `bound <= d(element)`.
    pub fn at_least(mut self, element: Element, bound: Element) -> Self {
        self.lower_bounds.push((element, bound));
        self
    }

    /// Allowed images per element, after applying every constraint.
    fn candidates(&self) -> Result<Vec<Vec<Element>>, EnumerateError> {
        let l = self.lattice;
        let n = l.size();
        let mut fixed: Vec<Option<Element>> = vec![None; n];
        for &(element, value) in &self.fixed {
            if element >= n || value >= n {
                return Err(EnumerateError::ConstraintOutOfRange {
                    element,
                    value,
                    size: n,
                });
            }
            match fixed[element] {
                Some(prev) if prev != value => {
                    return Err(EnumerateError::ConflictingConstraint { element })
                }
                _ => fixed[element] = Some(value),
            }
        }
        for &(element, value) in &self.lower_bounds {
            if element >= n || value >= n {
                return Err(EnumerateError::ConstraintOutOfRange {
                    element,
                    value,
                    size: n,
                });
            }
        }
        Ok((0..n)
            .map(|x| {
                let base: Vec<Element> = match fixed[x] {
                    Some(v) => vec![v],
                    None => (0..n).collect(),
                };
                base.into_iter()
                    .filter(|&v| {
                        self.lower_bounds
                            .iter()
                            .filter(|&&(e, _)| e == x)
                            .all(|&(_, b)| l.le(b, v))
                    })
                    .collect()
            })
            .collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Brute,
    Formula,
    Recurrence,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Brute => "brute",
            Method::Formula => "formula",
            Method::Recurrence => "recurrence",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub count: Count,
    pub method: Method,
    pub elapsed: Duration,
    pub overflow: bool,
}

impl CountReport {
    /// Combines the reports of disjoint partitions of one search.
    pub fn merge(self, other: CountReport) -> CountReport {
        let (count, overflow) = match self.count.checked_add(other.count) {
            Some(c) => (c, self.overflow || other.overflow),
            None => (Count::MAX, true),
        };
        CountReport {
            count,
            method: self.method,
            elapsed: self.elapsed.max(other.elapsed),
            overflow,
        }
    }
}

/// The per-depth list of pairs that become checkable once `d(depth)` is set.
struct Schedule {
    /// `ready[k]` holds `(x, y, x∧y)` with `max(x, y, x∧y) = k`.
    ready: Vec<Vec<(Element, Element, Element)>>,
}

impl Schedule {
    fn new(l: &Lattice, w: Weight) -> Self {
        let n = l.size();
        let mut ready = vec![Vec::new(); n];
        for x in 0..n {
            let start = if w.checks_diagonal() { x } else { x + 1 };
            for y in start..n {
                let m = l.meet(x, y);
                ready[x.max(y).max(m)].push((x, y, m));
            }
        }
        Self { ready }
    }
}

struct Search<'a, F: FnMut(&[Element])> {
    lattice: &'a Lattice,
    weight: Weight,
    schedule: &'a Schedule,
    candidates: &'a [Vec<Element>],
    image: Vec<Element>,
    count: Count,
    sink: F,
}

impl<'a, F: FnMut(&[Element])> Search<'a, F> {
    fn run(&mut self, depth: usize) {
        if depth == self.image.len() {
            self.count += 1;
            (self.sink)(&self.image);
            return;
        }
        for &v in &self.candidates[depth] {
            self.image[depth] = v;
            if self.consistent(depth) {
                self.run(depth + 1);
            }
        }
    }

    #[inline]
    fn consistent(&self, depth: usize) -> bool {
        let img = &self.image;
        self.schedule.ready[depth]
            .iter()
            .all(|&(x, y, m)| identity_at(self.lattice, self.weight, x, y, img[x], img[y], img[m]))
    }
}

fn pruned_partition(
    q: &CountQuery<'_>,
    schedule: &Schedule,
    candidates: &[Vec<Element>],
    sink: impl FnMut(&[Element]),
) -> Count {
    let mut search = Search {
        lattice: q.lattice,
        weight: q.weight,
        schedule,
        candidates,
        image: vec![0; q.lattice.size()],
        count: 0,
        sink,
    };
    search.run(0);
    search.count
}

fn unpruned_partition(
    q: &CountQuery<'_>,
    candidates: &[Vec<Element>],
    mut sink: impl FnMut(&[Element]),
) -> Count {
    let mut count = 0;
    for d in maps_within(candidates.to_vec()) {
        if weight_violation(q.lattice, &d, q.weight).is_none() {
            count += 1;
            sink(d.image());
        }
    }
    count
}

fn run_partition(
    q: &CountQuery<'_>,
    strategy: Strategy,
    schedule: &Schedule,
    candidates: &[Vec<Element>],
    sink: impl FnMut(&[Element]),
) -> Count {
    match strategy {
        Strategy::Pruned => pruned_partition(q, schedule, candidates, sink),
        Strategy::Unpruned => unpruned_partition(q, candidates, sink),
    }
}

/// Counts the operators matching `q`, handing each one to `emit` in
/// lexicographic order of image arrays.
pub fn enumerate_ops(
    q: &CountQuery<'_>,
    options: EnumerationOptions,
    mut emit: Option<&mut dyn FnMut(&Operator)>,
) -> Result<CountReport, EnumerateError> {
    let start = Instant::now();
    options.budget.admit(q.lattice.size())?;
    let candidates = q.candidates()?;
    let schedule = Schedule::new(q.lattice, q.weight);

    let count = match options.partitioning {
        Partitioning::Sequential => match emit.as_mut() {
            Some(f) => run_partition(q, options.strategy, &schedule, &candidates, |img| {
                f(&Operator::from_image_unchecked(img.to_vec()))
            }),
            None => run_partition(q, options.strategy, &schedule, &candidates, |_| {}),
        },
        Partitioning::ByFirstImage => {
            let keep = emit.is_some();
            let parts: Vec<(Count, Vec<Operator>)> = candidates[0]
                .par_iter()
                .map(|&v| {
                    let mut local = candidates.clone();
                    local[0] = vec![v];
                    let mut found = Vec::new();
                    let c = run_partition(q, options.strategy, &schedule, &local, |img| {
                        if keep {
                            found.push(Operator::from_image_unchecked(img.to_vec()));
                        }
                    });
                    (c, found)
                })
                .collect();
            let mut total: Count = 0;
            for (c, ops) in parts {
                total += c;
                if let Some(f) = emit.as_mut() {
                    ops.iter().for_each(f);
                }
            }
            total
        }
    };
    Ok(CountReport {
        count,
        method: Method::Brute,
        elapsed: start.elapsed(),
        overflow: false,
    })
}

/// Convenience wrapper: count with default options.
pub fn count_ops(q: &CountQuery<'_>) -> Result<Count, EnumerateError> {
    enumerate_ops(q, EnumerationOptions::default(), None).map(|r| r.count)
}

/// All operators matching `q`, in lexicographic order.
pub fn collect_ops(q: &CountQuery<'_>) -> Result<Vec<Operator>, EnumerateError> {
    collect_ops_with(q, EnumerationOptions::default())
}

pub fn collect_ops_with(
    q: &CountQuery<'_>,
    options: EnumerationOptions,
) -> Result<Vec<Operator>, EnumerateError> {
    let mut out = Vec::new();
    enumerate_ops(q, options, Some(&mut |d: &Operator| out.push(d.clone())))?;
    Ok(out)
}

/// Every self-map of an `n`-element set, in lexicographic order.
pub fn all_maps(n: usize) -> impl Iterator<Item = Operator> {
    maps_within(vec![(0..n).collect(); n])
}

/// Every map with `d(x) ∈ candidates[x]`, in lexicographic order when each
/// candidate list is ascending. No identity is checked.
pub fn maps_within(candidates: Vec<Vec<Element>>) -> impl Iterator<Item = Operator> {
    let n = candidates.len();
    let mut pos = vec![0usize; n];
    let mut done = candidates.iter().any(|c| c.is_empty());
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let image: Vec<Element> = (0..n).map(|x| candidates[x][pos[x]]).collect();
        let mut k = n;
        loop {
            if k == 0 {
                done = true;
                break;
            }
            k -= 1;
            pos[k] += 1;
            if pos[k] < candidates[k].len() {
                break;
            }
            pos[k] = 0;
        }
        Some(Operator::from_image_unchecked(image))
    })
}
