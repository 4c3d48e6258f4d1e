use crate::forest::Subforest;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Left,
    Right,
}

/// Which input tree a rule looks at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    F,
    G,
}

/// A decomposition strategy: picks, for every pair of subforests, whether the
/// recursion consumes the leftmost or the rightmost roots.
///
/// Must be a pure function of the pair. It is consulted for every non-trivial
/// pair, including pairs where one side is already empty.
pub trait Strategy {
    fn decide(&self, f: Subforest<'_>, g: Subforest<'_>) -> Direction;
}

impl<S: Strategy + ?Sized> Strategy for &S {
    fn decide(&self, f: Subforest<'_>, g: Subforest<'_>) -> Direction {
        (**self).decide(f, g)
    }
}

/// Always recurse on the rightmost roots (Shasha-Zhang).
#[derive(Debug, Clone, Copy, Default)]
pub struct RightToLeft;

impl Strategy for RightToLeft {
    #[inline]
    fn decide(&self, _f: Subforest<'_>, _g: Subforest<'_>) -> Direction {
        Direction::Right
    }
}

/// Klein's rule on one side: go left when the leftmost tree is no larger than
/// the rightmost one. If the driving side is empty the other side decides.
#[derive(Debug, Clone, Copy)]
pub struct Klein {
    pub drive: Side,
}

impl Klein {
    /// Lets the larger tree drive, F on ties.
    pub fn for_sizes(n: usize, m: usize) -> Self {
        Klein {
            drive: if n >= m { Side::F } else { Side::G },
        }
    }
}

#[inline]
fn klein_rule(s: Subforest<'_>) -> Direction {
    let idx = s.index();
    let (a, b) = s.bounds();
    let left = idx.span_node_size(idx.span_left_root(a));
    let right = idx.span_node_size(idx.span_right_root(b));
    if left <= right {
        Direction::Left
    } else {
        Direction::Right
    }
}

impl Strategy for Klein {
    #[inline]
    fn decide(&self, f: Subforest<'_>, g: Subforest<'_>) -> Direction {
        let (drive, other) = match self.drive {
            Side::F => (f, g),
            Side::G => (g, f),
        };
        if drive.is_empty() {
            klein_rule(other)
        } else {
            klein_rule(drive)
        }
    }
}

/// A seeded coin flip per subforest pair. Deterministic for a fixed seed.
#[derive(Debug, Clone, Copy)]
pub struct RandomStrategy {
    pub seed: u64,
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl Strategy for RandomStrategy {
    fn decide(&self, f: Subforest<'_>, g: Subforest<'_>) -> Direction {
        let (fa, fb) = f.bounds();
        let (ga, gb) = g.bounds();
        let mut h = splitmix(self.seed);
        for x in [fa, fb, ga, gb] {
            h = splitmix(h ^ x as u64);
        }
        if h & 1 == 0 {
            Direction::Left
        } else {
            Direction::Right
        }
    }
}

/// Adapter for closures.
pub struct FnStrategy<F>(pub F);

impl<F> Strategy for FnStrategy<F>
where
    F: Fn(Subforest<'_>, Subforest<'_>) -> Direction,
{
    fn decide(&self, f: Subforest<'_>, g: Subforest<'_>) -> Direction {
        (self.0)(f, g)
    }
}
