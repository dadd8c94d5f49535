use std::time::Instant;

use num_bigint::BigUint;
use rayon::prelude::*;

use super::{CountResult, EnumerationError};
use crate::graph::{GraphWindow, VertexId};

/// Redelmeier's extension scheme. Every vertex that ever entered an untried
/// list on the current branch stays `seen`, so each connected set is reached
/// from exactly one branch.
struct AnimalSearch<'a, F> {
    w: &'a GraphWindow,
    target: usize,
    seen: Vec<bool>,
    added: Vec<VertexId>,
    members: Vec<VertexId>,
    emit: F,
}

impl<'a, F: FnMut(&[VertexId])> AnimalSearch<'a, F> {
    /// Adds `u`; the untried list for its subtree is `rest` plus the
    /// neighbours of `u` seen for the first time.
    fn branch(&mut self, u: VertexId, rest: &[VertexId]) {
        self.members.push(u);
        if self.members.len() == self.target {
            (self.emit)(&self.members);
        } else {
            let mut untried = rest.to_vec();
            let mark = self.added.len();
            for &v in self.w.neighbors(u) {
                if !self.seen[v as usize] {
                    self.seen[v as usize] = true;
                    self.added.push(v);
                    untried.push(v);
                }
            }
            for i in (0..untried.len()).rev() {
                self.branch(untried[i], &untried[..i]);
            }
            for v in self.added.drain(mark..) {
                self.seen[v as usize] = false;
            }
        }
        self.members.pop();
    }
}

/// Initial `seen` marks and untried list for sets grown from `x`, skipping
/// vertices below `blocked_below`.
fn start(w: &GraphWindow, x: VertexId, blocked_below: VertexId) -> (Vec<bool>, Vec<VertexId>) {
    let mut seen = vec![false; w.vertex_count()];
    for s in seen.iter_mut().take(blocked_below as usize) {
        *s = true;
    }
    seen[x as usize] = true;
    let mut first = Vec::new();
    for &v in w.neighbors(x) {
        if !seen[v as usize] {
            seen[v as usize] = true;
            first.push(v);
        }
    }
    (seen, first)
}

fn search_branch<F: FnMut(&[VertexId])>(
    w: &GraphWindow,
    x: VertexId,
    n: usize,
    seen: Vec<bool>,
    first: &[VertexId],
    j: usize,
    emit: F,
) -> F {
    let mut s = AnimalSearch {
        w,
        target: n,
        seen,
        added: Vec::new(),
        members: vec![x],
        emit,
    };
    s.branch(first[j], &first[..j]);
    s.emit
}

fn enumerate_sequential(
    w: &GraphWindow,
    x: VertexId,
    n: u32,
    blocked_below: VertexId,
    mut f: impl FnMut(&[VertexId]),
) {
    if n == 1 {
        f(&[x]);
        return;
    }
    let (seen, first) = start(w, x, blocked_below);
    for j in (0..first.len()).rev() {
        f = search_branch(w, x, n as usize, seen.clone(), &first, j, f);
    }
}

fn check(w: &GraphWindow, x: VertexId, n: u32) -> Result<(), EnumerationError> {
    if n == 0 {
        return Err(EnumerationError::ZeroOrder);
    }
    w.require_exact_ball(x, n - 1)?;
    Ok(())
}

/// Parallel fold over every animal of order `n` containing `x`.
///
/// Each first-step branch folds into its own accumulator, which are then
/// merged with `reduce`. Member slices are in discovery order, not sorted.
pub fn fold_animals<T, I, F, R>(
    w: &GraphWindow,
    x: VertexId,
    n: u32,
    identity: I,
    fold: F,
    reduce: R,
) -> Result<T, EnumerationError>
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(&mut T, &[VertexId]) + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    check(w, x, n)?;
    if n == 1 {
        let mut acc = identity();
        fold(&mut acc, &[x]);
        return Ok(acc);
    }
    let (seen, first) = start(w, x, 0);
    Ok((0..first.len())
        .into_par_iter()
        .map(|j| {
            let mut acc = identity();
            let _ = search_branch(w, x, n as usize, seen.clone(), &first, j, |a: &[VertexId]| {
                fold(&mut acc, a)
            });
            acc
        })
        .reduce(&identity, &reduce))
}

/// Exact `|A_N(x)|`: connected vertex sets of order `n` containing `x`.
///
/// Requires `B_{n-1}(x)` to be exact. A sink receives each animal once as a
/// sorted id list, on the calling thread.
pub fn count_animals(
    w: &GraphWindow,
    x: VertexId,
    n: u32,
    sink: Option<&mut dyn FnMut(&[VertexId])>,
) -> Result<CountResult, EnumerationError> {
    let started = Instant::now();
    let count = match sink {
        Some(s) => for_each_animal(w, x, n, s)?,
        None => fold_animals(w, x, n, || 0u128, |c, _| *c += 1, |a, b| a + b)?,
    };
    Ok(CountResult {
        n,
        count: BigUint::from(count),
        bound_12: None,
        bound_13: None,
        wall_time: started.elapsed(),
    })
}

/// Streams every animal of order `n` containing `x` as a sorted id list.
pub fn for_each_animal(
    w: &GraphWindow,
    x: VertexId,
    n: u32,
    mut f: impl FnMut(&[VertexId]),
) -> Result<u128, EnumerationError> {
    check(w, x, n)?;
    let mut count = 0u128;
    let mut sorted = Vec::with_capacity(n as usize);
    enumerate_sequential(w, x, n, 0, |a| {
        count += 1;
        sorted.clear();
        sorted.extend_from_slice(a);
        sorted.sort_unstable();
        f(&sorted);
    });
    Ok(count)
}

/// Streams every connected vertex set of order `n` in the whole window, each
/// once (grown from its smallest member), as a sorted id list.
pub fn for_each_connected_set(
    w: &GraphWindow,
    n: u32,
    mut f: impl FnMut(&[VertexId]),
) -> Result<u128, EnumerationError> {
    if n == 0 {
        return Err(EnumerationError::ZeroOrder);
    }
    let mut count = 0u128;
    let mut sorted = Vec::with_capacity(n as usize);
    for root in w.vertices() {
        enumerate_sequential(w, root, n, root, |a| {
            count += 1;
            sorted.clear();
            sorted.extend_from_slice(a);
            sorted.sort_unstable();
            f(&sorted);
        });
    }
    Ok(count)
}

/// Number of connected vertex sets of order `n` in the window.
pub fn count_connected_sets(w: &GraphWindow, n: u32) -> Result<u128, EnumerationError> {
    for_each_connected_set(w, n, |_| {})
}
