//! Instance generators: the comb and zigzag families, balanced trees, paths
//! and seeded random trees.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::forest::{Label, Tree};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("comb size must be even and at least 2, got {0}")]
    Comb(usize),
    #[error("zigzag size must be a positive multiple of 4, got {0}")]
    Zigzag(usize),
    #[error("balanced depth {0} is too large")]
    Balanced(u32),
}

const UNIFORM: &str = "a";

fn uniform(n: usize) -> Vec<Label> {
    vec![Label::new(UNIFORM).unwrap(); n]
}

fn build(labels: Vec<Label>, children: Vec<Vec<usize>>) -> Tree {
    if labels.is_empty() {
        return Tree::empty();
    }
    Tree::from_children(labels, children, 0).expect("generator builds a tree")
}

/// Comb with a left spine: `n/2` internal nodes, each with a leaf as its
/// rightmost child. The i-th internal node from the bottom has `2i` nodes
/// below and including it.
pub fn gen_comb(n: usize) -> Result<Tree, GenError> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(GenError::Comb(n));
    }
    let k = n / 2;
    // Node 2j is the j-th internal node from the top, 2j+1 its leaf.
    let mut children = vec![Vec::new(); n];
    for j in 0..k {
        if j + 1 < k {
            children[2 * j].push(2 * j + 2);
        }
        children[2 * j].push(2 * j + 1);
    }
    Ok(build(uniform(n), children))
}

/// The comb reflected left to right: a right spine with leaves on the left.
pub fn gen_comb_mirror(n: usize) -> Result<Tree, GenError> {
    gen_comb(n).map(|t| t.mirror())
}

/// Complete binary tree of depth `k` with `2^(k+1) - 1` nodes.
pub fn gen_balanced(k: u32) -> Result<Tree, GenError> {
    if k > 24 {
        return Err(GenError::Balanced(k));
    }
    let n = (1usize << (k + 1)) - 1;
    let children = (0..n)
        .map(|v| {
            if 2 * v + 2 < n {
                vec![2 * v + 1, 2 * v + 2]
            } else {
                Vec::new()
            }
        })
        .collect();
    Ok(build(uniform(n), children))
}

/// Chain of `m/4` four-node units. Unit root `w` has children `[w_l, w_r]`
/// with `w_r` a leaf; `w_l` has a leaf as its left child and the next unit's
/// root as its right child, except in the deepest unit.
pub fn gen_zigzag(m: usize) -> Result<Tree, GenError> {
    if m < 4 || !m.is_multiple_of(4) {
        return Err(GenError::Zigzag(m));
    }
    let units = m / 4;
    let mut children = vec![Vec::new(); m];
    for u in 0..units {
        let (w, wl, wl_leaf, wr) = (4 * u, 4 * u + 1, 4 * u + 2, 4 * u + 3);
        children[w] = vec![wl, wr];
        children[wl].push(wl_leaf);
        if u + 1 < units {
            children[wl].push(4 * (u + 1));
        }
    }
    Ok(build(uniform(m), children))
}

/// Unary chain of `n` nodes labelled `a`.
pub fn gen_path(n: usize) -> Tree {
    let children = (0..n).map(|v| if v + 1 < n { vec![v + 1] } else { Vec::new() }).collect();
    build(uniform(n), children)
}

/// Path whose labels, read from the root down, are the characters of `s`.
pub fn path_of_str(s: &str) -> Tree {
    let labels: Vec<Label> = s.chars().map(|c| Label::new(c.to_string()).unwrap()).collect();
    let n = labels.len();
    let children = (0..n).map(|v| if v + 1 < n { vec![v + 1] } else { Vec::new() }).collect();
    build(labels, children)
}

fn random_shape(n: usize, rng: &mut ChaCha8Rng, max_children: usize) -> Vec<Vec<usize>> {
    let cap = max_children.max(1);
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut open: Vec<usize> = Vec::new();
    if n > 0 {
        open.push(0);
    }
    for v in 1..n {
        let slot = rng.gen_range(0..open.len());
        let p = open[slot];
        let at = rng.gen_range(0..=children[p].len());
        children[p].insert(at, v);
        if children[p].len() >= cap {
            open.swap_remove(slot);
        }
        open.push(v);
    }
    children
}

/// Random tree on `n` nodes labelled `a`: each new node attaches at a random
/// position under a uniformly chosen node that still has fewer than
/// `max_children` children. Deterministic for a fixed seed.
pub fn gen_random(n: usize, seed: u64, max_children: usize) -> Tree {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    build(uniform(n), random_shape(n, &mut rng, max_children))
}

/// As [`gen_random`], with labels drawn uniformly from `alphabet`.
pub fn gen_random_labeled(n: usize, seed: u64, max_children: usize, alphabet: &[&str]) -> Tree {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let children = random_shape(n, &mut rng, max_children);
    let labels = (0..n)
        .map(|_| Label::new(*alphabet.choose(&mut rng).expect("non-empty alphabet")).unwrap())
        .collect();
    build(labels, children)
}

/// Every ordered tree shape with exactly `k` nodes, labelled `a`.
pub fn all_shapes(k: usize) -> Vec<Tree> {
    if k == 0 {
        return vec![Tree::empty()];
    }
    forests(k - 1)
        .into_iter()
        .map(|kids| Tree::node(UNIFORM, kids))
        .collect()
}

fn forests(s: usize) -> Vec<Vec<Tree>> {
    if s == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=s {
        for head in all_shapes(first) {
            for mut tail in forests(s - first) {
                tail.insert(0, head.clone());
                out.push(tail);
            }
        }
    }
    out
}
