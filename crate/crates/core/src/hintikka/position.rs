use std::fmt;

use crate::structures::{NodeId, PlaneTree};

/// One step of a Gaifman path. `Up` goes to the parent; `Left` goes to the
/// next sibling (`succ(u, u')`), `Right` to the previous one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    Up,
    Down,
    Left,
    Right,
}

impl Step {
    pub fn reversed(self) -> Step {
        match self {
            Step::Up => Step::Down,
            Step::Down => Step::Up,
            Step::Left => Step::Right,
            Step::Right => Step::Left,
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Step::Up => "up",
            Step::Down => "down",
            Step::Left => "left",
            Step::Right => "right",
        })
    }
}

fn position_in_parent(t: &PlaneTree, v: NodeId) -> usize {
    t.parent(v).map_or(0, |p| t.children(p).iter().position(|&c| c == v).expect("child of its parent"))
}

/// The word of the shortest strongly canonical path from `v` to `w` if it
/// has length at most `k`, else of the weakly canonical one, else `None`.
pub fn k_position(t: &PlaneTree, v: NodeId, w: NodeId, k: usize) -> Option<Vec<Step>> {
    let (dv, dw) = (t.depth(v), t.depth(w));
    // climb to the lowest common ancestor, remembering the last nodes below it
    let (mut x, mut y) = (v, w);
    let (mut below_x, mut below_y) = (None, None);
    let (mut ax, mut ay) = (dv, dw);
    while ax > ay {
        below_x = Some(x);
        x = t.parent(x)?;
        ax -= 1;
    }
    while ay > ax {
        below_y = Some(y);
        y = t.parent(y)?;
        ay -= 1;
    }
    while x != y {
        below_x = Some(x);
        below_y = Some(y);
        x = t.parent(x)?;
        y = t.parent(y)?;
        ax -= 1;
    }
    let lca_depth = ax;
    let (up, down) = (dv - lca_depth, dw - lca_depth);
    if let (Some(bx), Some(by)) = (below_x, below_y) {
        let (px, py) = (position_in_parent(t, bx), position_in_parent(t, by));
        let side = px.abs_diff(py);
        let len = (up - 1) + side + (down - 1);
        if len <= k {
            let dir = if py > px { Step::Left } else { Step::Right };
            let mut word = vec![Step::Up; up - 1];
            word.extend(std::iter::repeat_n(dir, side));
            word.extend(std::iter::repeat_n(Step::Down, down - 1));
            return Some(word);
        }
    }
    (up + down <= k).then(|| {
        let mut word = vec![Step::Up; up];
        word.extend(std::iter::repeat_n(Step::Down, down));
        word
    })
}

pub fn word_to_string(word: &[Step]) -> String {
    word.iter().map(Step::to_string).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> PlaneTree {
        // 0 -> [1, 2, 3], 1 -> [4], 3 -> [5]
        PlaneTree::from_children(vec![vec![1, 2, 3], vec![4], vec![], vec![5], vec![], vec![]]).unwrap()
    }

    #[test]
    fn parent_is_up() {
        assert_eq!(k_position(&sample(), 4, 1, 1), Some(vec![Step::Up]));
        assert_eq!(k_position(&sample(), 1, 4, 1), Some(vec![Step::Down]));
    }

    #[test]
    fn next_sibling_is_left() {
        assert_eq!(k_position(&sample(), 1, 2, 1), Some(vec![Step::Left]));
        assert_eq!(k_position(&sample(), 2, 1, 1), Some(vec![Step::Right]));
    }

    #[test]
    fn cousins_use_a_strong_path() {
        let word = k_position(&sample(), 4, 5, 4).unwrap();
        assert_eq!(word, vec![Step::Up, Step::Left, Step::Left, Step::Down]);
        // the weakly canonical path has the same length but the strong one wins
        assert_eq!(k_position(&sample(), 4, 5, 3), None);
    }

    #[test]
    fn falls_back_to_weak_path() {
        // strong path 4 -> 2 is up left, weak path is up up down: both length <= 3
        assert_eq!(k_position(&sample(), 4, 2, 2), Some(vec![Step::Up, Step::Left]));
        assert_eq!(k_position(&sample(), 4, 3, 1), None);
        assert_eq!(k_position(&sample(), 0, 5, 2), Some(vec![Step::Down, Step::Down]));
        assert_eq!(k_position(&sample(), 0, 5, 1), None);
        assert_eq!(k_position(&sample(), 3, 3, 0), Some(vec![]));
    }
}
