//! Extremal rainbow-triangle-free colorings with no monochromatic fan of
//! a given order. Each family realizes the lower bound of its table row:
//! the built graph has order `lower - 1`.
//!
//! Graphs are assembled from a small block tree (monochromatic cliques,
//! one K8 gadget shape, and blow-ups), so replacement steps are performed
//! structurally before materialization. All placement choices that the
//! sources leave open are frozen here and guarded by regression tests.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::coloring::{Color, ColoredCompleteGraph, MAX_ORDER};
use crate::error::{Error, Result};
use crate::gallai::{blow_up, pentagon_coloring};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Block {
    /// `K_n` colored uniformly in `c`.
    Mono { n: usize, c: Color },
    /// `K_8`: a 5-cycle in `c5` on vertices 0..5, a triangle in `tri` on
    /// vertices 5..8, every remaining edge in color 1.
    Gadget { c5: Color, tri: Color },
    Blow { reduced: ColoredCompleteGraph, parts: Vec<Block> },
}

use Block::{Blow, Gadget, Mono};

fn gadget_k8(c5: Color, tri: Color) -> Result<ColoredCompleteGraph> {
    ColoredCompleteGraph::from_fn(8, c5.max(tri).max(1), |u, v| {
        if v < 5 && (v - u == 1 || v - u == 4) {
            c5
        } else if u >= 5 {
            tri
        } else {
            1
        }
    })
}

fn join2() -> Result<ColoredCompleteGraph> {
    ColoredCompleteGraph::new_uniform(2, 2, 2)
}

fn materialize(b: &Block) -> Result<ColoredCompleteGraph> {
    match b {
        Mono { n, c } => ColoredCompleteGraph::new_uniform(*n, *c, *c),
        Gadget { c5, tri } => gadget_k8(*c5, *tri),
        Blow { reduced, parts } => {
            let built: Result<Vec<_>> = parts.iter().map(materialize).collect();
            blow_up(reduced, &built?)
        }
    }
}

fn is_mono_k6(b: &Block) -> bool {
    matches!(b, Mono { n: 6, c: 1 })
}

/// A color-2 join of two intact mono `K_6` halves.
fn is_pure_join_block(b: &Block) -> bool {
    matches!(b, Blow { reduced, parts }
        if reduced.order() == 2 && parts.iter().all(is_mono_k6))
}

/// A `(2,3)`-pentagon block holding exactly the base gadget and four
/// intact mono `K_6` parts.
fn is_pure_pentagon_block(b: &Block) -> bool {
    match b {
        Blow { reduced, parts } if reduced.order() == 5 => {
            matches!(parts[0], Gadget { c5: 2, tri: 3 }) && parts[1..].iter().all(is_mono_k6)
        }
        _ => false,
    }
}

/// Replace the first half of the first pure join block (depth-first,
/// parts in index order) with `g`.
fn replace_in_first_pure_join(b: &mut Block, g: &Block) -> bool {
    if is_pure_join_block(b) {
        if let Blow { parts, .. } = b {
            parts[0] = g.clone();
        }
        return true;
    }
    if let Blow { parts, .. } = b {
        for p in parts.iter_mut() {
            if replace_in_first_pure_join(p, g) {
                return true;
            }
        }
    }
    false
}

/// Replace the first color-2-adjacent `K_6` (position 1) of the first
/// pure pentagon block with `g`. Position 1 is the lexicographically
/// first part adjacent to the base gadget in the cycle color.
fn replace_in_first_pure_pentagon(b: &mut Block, g: &Block) -> bool {
    if is_pure_pentagon_block(b) {
        if let Blow { parts, .. } = b {
            parts[1] = g.clone();
        }
        return true;
    }
    if let Blow { parts, .. } = b {
        for p in parts.iter_mut() {
            if replace_in_first_pure_pentagon(p, g) {
                return true;
            }
        }
    }
    false
}

fn pow5(e: u32) -> Result<u64> {
    5u64.checked_pow(e).ok_or_else(|| Error::Param(format!("5^{e} overflows")))
}

fn guard_order(expected: u64) -> Result<usize> {
    if expected == 0 || expected > MAX_ORDER as u64 {
        return Err(Error::Param(format!("construction order {expected} exceeds {MAX_ORDER}")));
    }
    Ok(expected as usize)
}

fn finish(tree: &Block, expected: usize, k: Color) -> Result<ColoredCompleteGraph> {
    let g = materialize(tree)?;
    if g.order() != expected {
        return Err(Error::Internal(format!(
            "built order {} but closed form gives {expected}",
            g.order()
        )));
    }
    if g.palette() != k {
        return Err(Error::Internal(format!("built palette {} but wanted {k}", g.palette())));
    }
    Ok(g)
}

/// Bowtie-free tower for odd palette sizes: a mono `K_4`, then one
/// pentagon blow-up per pair of new colors. Order `4 * 5^((k-1)/2)`.
pub fn construct_f2_odd(k: u32) -> Result<ColoredCompleteGraph> {
    if k == 0 || k % 2 == 0 {
        return Err(Error::Param(format!("odd tower needs odd k, got {k}")));
    }
    let expected = guard_order(4 * pow5((k - 1) / 2)?)?;
    let mut tree = Mono { n: 4, c: 1 };
    let mut kk = 1;
    while kk < k {
        tree = Blow {
            reduced: pentagon_coloring((kk + 1) as Color, (kk + 2) as Color)?,
            parts: vec![tree; 5],
        };
        kk += 2;
    }
    finish(&tree, expected, k as Color)
}

/// Bowtie-free tower maximizing useful colors: a single edge in the
/// wasted color 1, then `i` pentagon blow-ups contributing two useful
/// colors each. Order `2 * 5^i`, palette `2i + 1`, `2i` useful colors.
pub fn construct_f2_useful(i: u32) -> Result<ColoredCompleteGraph> {
    if i == 0 {
        return Err(Error::Param(String::from("need at least one pentagon step")));
    }
    let expected = guard_order(2 * pow5(i)?)?;
    let mut tree = Mono { n: 2, c: 1 };
    for j in 1..=i {
        tree = Blow {
            reduced: pentagon_coloring((2 * j) as Color, (2 * j + 1) as Color)?,
            parts: vec![tree; 5],
        };
    }
    finish(&tree, expected, (2 * i + 1) as Color)
}

/// `K_9` block: four `K_2`s in colors 1..=4 plus a singleton, joined by
/// the `(1,2)` pentagon coloring.
fn a4_prime() -> Result<Block> {
    Ok(Blow {
        reduced: pentagon_coloring(1, 2)?,
        parts: vec![
            Mono { n: 2, c: 1 },
            Mono { n: 2, c: 2 },
            Mono { n: 2, c: 3 },
            Mono { n: 2, c: 4 },
            Mono { n: 1, c: 1 },
        ],
    })
}

fn is_a4_prime(b: &Block) -> bool {
    match b {
        Blow { reduced, parts } if reduced.order() == 5 => {
            parts[4] == Mono { n: 1, c: 1 }
                && (0..4).all(|i| parts[i] == Mono { n: 2, c: (i + 1) as Color })
        }
        _ => false,
    }
}

/// `K_10` block: like [`a4_prime`] but the singleton grows to a `K_2` in
/// color `j`.
fn a_j(j: Color) -> Result<Block> {
    Ok(Blow {
        reduced: pentagon_coloring(1, 2)?,
        parts: vec![
            Mono { n: 2, c: 1 },
            Mono { n: 2, c: 2 },
            Mono { n: 2, c: 3 },
            Mono { n: 2, c: 4 },
            Mono { n: 2, c: j },
        ],
    })
}

fn replace_first_a4_prime(b: &mut Block, g: &Block) -> bool {
    if is_a4_prime(b) {
        *b = g.clone();
        return true;
    }
    if let Blow { parts, .. } = b {
        for p in parts.iter_mut() {
            if replace_first_a4_prime(p, g) {
                return true;
            }
        }
    }
    false
}

fn f2_even_tree(k: u32) -> Result<Block> {
    Ok(match k {
        2 => Blow { reduced: join2()?, parts: vec![Mono { n: 4, c: 1 }; 2] },
        4 => {
            let g2 = f2_even_tree(2)?;
            Blow {
                reduced: pentagon_coloring(3, 4)?,
                parts: vec![a4_prime()?, g2.clone(), g2.clone(), g2.clone(), g2],
            }
        }
        _ => {
            let base = f2_even_tree(k - 2)?;
            let mut parts = vec![base; 5];
            // The two upgraded blocks live in different subcopies.
            for (copy, j) in [(0usize, (k - 1) as Color), (1usize, k as Color)] {
                if !replace_first_a4_prime(&mut parts[copy], &a_j(j)?) {
                    return Err(Error::Internal(String::from("no K9 block left to upgrade")));
                }
            }
            Blow { reduced: pentagon_coloring((k - 1) as Color, k as Color)?, parts }
        }
    })
}

/// Bowtie-free tower for even palette sizes: two mono `K_4`s joined, one
/// pentagon blow-up per new color pair, with one `K_9` block introduced
/// at `k = 4` and two `K_9` -> `K_10` upgrades per later step. Order
/// `(83 * 5^((k-4)/2) - 1) / 2` for `k >= 4`, order 8 at `k = 2`.
pub fn construct_f2_even(k: u32) -> Result<ColoredCompleteGraph> {
    if k < 2 || k % 2 == 1 {
        return Err(Error::Param(format!("even tower needs even k >= 2, got {k}")));
    }
    let expected = if k == 2 { 8 } else { (83 * pow5((k - 4) / 2)? - 1) / 2 };
    let expected = guard_order(expected)?;
    finish(&f2_even_tree(k)?, expected, k as Color)
}

fn mono_k6() -> Block {
    Mono { n: 6, c: 1 }
}

fn f3_tree(k: u32) -> Result<Block> {
    Ok(match k {
        1 => mono_k6(),
        2 => Blow { reduced: join2()?, parts: vec![mono_k6(), mono_k6()] },
        3 => Blow {
            reduced: pentagon_coloring(2, 3)?,
            parts: vec![Gadget { c5: 2, tri: 3 }, mono_k6(), mono_k6(), mono_k6(), mono_k6()],
        },
        _ if k % 2 == 0 => {
            // Two gadget-bearing copies joined in the distance-2 color at
            // positions {0, 2}, two in the cycle color at {3, 4}, one
            // plain copy at 1. The new gadget replaces a K6 half of the
            // unique pure join block; any other site sits next to an
            // existing color-2 cycle and forms a fan.
            let base = f3_tree(k - 2)?;
            let mut a = base.clone();
            if !replace_in_first_pure_join(&mut a, &Gadget { c5: 2, tri: (k - 1) as Color }) {
                return Err(Error::Internal(String::from("no pure join block left")));
            }
            let mut b = base.clone();
            if !replace_in_first_pure_join(&mut b, &Gadget { c5: 2, tri: k as Color }) {
                return Err(Error::Internal(String::from("no pure join block left")));
            }
            Blow {
                reduced: pentagon_coloring((k - 1) as Color, k as Color)?,
                parts: vec![a.clone(), base, a, b.clone(), b],
            }
        }
        _ => {
            // Odd step: the new gadget carries its 5-cycle in a brand new
            // color with the triangle in color 3, and replaces a K6 that
            // is cycle-color-adjacent to the base gadget of a pentagon
            // block without prior upgrades.
            let base = f3_tree(k - 2)?;
            let mut a = base.clone();
            if !replace_in_first_pure_pentagon(&mut a, &Gadget { c5: (k - 1) as Color, tri: 3 }) {
                return Err(Error::Internal(String::from("no pure pentagon block left")));
            }
            let mut b = base.clone();
            if !replace_in_first_pure_pentagon(&mut b, &Gadget { c5: k as Color, tri: 3 }) {
                return Err(Error::Internal(String::from("no pure pentagon block left")));
            }
            Blow {
                reduced: pentagon_coloring((k - 1) as Color, k as Color)?,
                parts: vec![a, b, base.clone(), base.clone(), base],
            }
        }
    })
}

/// Fan-order-3-free tower. Orders: 6, 12, then `33 * 5^((k-3)/2) - 1`
/// for odd `k` and `14 * 5^((k-2)/2) - 2` for even `k`.
pub fn construct_f3(k: u32) -> Result<ColoredCompleteGraph> {
    if k == 0 {
        return Err(Error::Param(String::from("palette size must be at least 1")));
    }
    let expected = match k {
        1 => 6,
        2 => 12,
        _ if k % 2 == 1 => 33 * pow5((k - 3) / 2)? - 1,
        _ => 14 * pow5((k - 2) / 2)? - 2,
    };
    let expected = guard_order(expected)?;
    finish(&f3_tree(k)?, expected, k as Color)
}

/// Generic fan-order-`n`-free tower: a mono `K_{2n}`, doubled on even
/// steps and pentagon-blown on odd steps. Order `2n * 5^((k-1)/2)` for
/// odd `k`, `4n * 5^((k-2)/2)` for even `k`.
pub fn construct_fn(n: u32, k: u32) -> Result<ColoredCompleteGraph> {
    if n == 0 {
        return Err(Error::Param(String::from("fan order must be at least 1")));
    }
    if k == 0 {
        return Err(Error::Param(String::from("palette size must be at least 1")));
    }
    let expected = if k % 2 == 1 {
        2 * n as u64 * pow5((k - 1) / 2)?
    } else {
        4 * n as u64 * pow5((k - 2) / 2)?
    };
    let expected = guard_order(expected)?;
    fn tree(n: u32, k: u32) -> Result<Block> {
        Ok(match k {
            1 => Mono { n: 2 * n as usize, c: 1 },
            _ if k % 2 == 0 => Blow {
                reduced: ColoredCompleteGraph::new_uniform(2, k as Color, k as Color)?,
                parts: vec![tree(n, k - 1)?; 2],
            },
            _ => Blow {
                reduced: pentagon_coloring((k - 1) as Color, k as Color)?,
                parts: vec![tree(n, k - 2)?; 5],
            },
        })
    }
    finish(&tree(n, k)?, expected, k as Color)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::{find_mono_fan, find_rainbow_triangle, max_fan_order};

    fn assert_free(g: &ColoredCompleteGraph, m: usize) {
        assert!(find_rainbow_triangle(g).is_none(), "rainbow triangle in {g:?}");
        for c in 1..=g.palette() {
            assert!(find_mono_fan(g, m, c).is_none(), "fan of order {m} in color {c} of {g:?}");
        }
    }

    #[test]
    fn f2_odd_orders_and_freeness() {
        for (k, order) in [(1, 4), (3, 20), (5, 100)] {
            let g = construct_f2_odd(k).unwrap();
            assert_eq!(g.order(), order);
            assert_eq!(g.palette() as u32, k);
            assert_free(&g, 2);
        }
        assert!(construct_f2_odd(2).is_err());
        assert!(construct_f2_odd(0).is_err());
        assert!(construct_f2_odd(15).is_err());
    }

    #[test]
    fn f2_odd_block_numbering_is_depth_first() {
        let g = construct_f2_odd(3).unwrap();
        assert_eq!(g.color(0, 3), 1); // inside the first K4
        assert_eq!(g.color(0, 4), 2); // consecutive pentagon parts
        assert_eq!(g.color(0, 8), 3); // distance-2 pentagon parts
    }

    #[test]
    fn f2_useful_orders_and_useful_counts() {
        for (i, order) in [(1, 10), (2, 50), (3, 250)] {
            let g = construct_f2_useful(i).unwrap();
            assert_eq!(g.order(), order);
            assert_eq!(g.palette() as u32, 2 * i + 1);
            assert_eq!(crate::detect::count_useful_colors(&g) as u32, 2 * i);
            assert_free(&g, 2);
        }
        assert!(construct_f2_useful(0).is_err());
        assert!(construct_f2_useful(7).is_err());
    }

    #[test]
    fn f2_even_orders_and_freeness() {
        for (k, order) in [(2, 8), (4, 41), (6, 207)] {
            let g = construct_f2_even(k).unwrap();
            assert_eq!(g.order(), order);
            assert_eq!(g.palette() as u32, k);
            assert_free(&g, 2);
        }
        assert!(construct_f2_even(3).is_err());
        assert!(construct_f2_even(0).is_err());
        assert!(construct_f2_even(14).is_err());
    }

    #[test]
    fn f3_orders_and_freeness_small() {
        for (k, order) in [(1, 6), (2, 12), (3, 32), (4, 68), (5, 164)] {
            let g = construct_f3(k).unwrap();
            assert_eq!(g.order(), order);
            assert_eq!(g.palette() as u32, k);
            assert_free(&g, 3);
        }
        assert!(construct_f3(0).is_err());
        assert!(construct_f3(13).is_err());
    }

    #[test]
    fn f3_tower_keeps_maximum_fan_order_two() {
        let g = construct_f3(4).unwrap();
        for c in 1..=4 {
            assert!(max_fan_order(&g, c) <= 2);
        }
    }

    #[test]
    fn fn_orders_and_freeness_small() {
        for n in 1..=4u32 {
            for k in 1..=4u32 {
                let g = construct_fn(n, k).unwrap();
                let e = (k - 1) / 2;
                let expected = if k % 2 == 1 {
                    2 * n * 5u32.pow(e)
                } else {
                    4 * n * 5u32.pow((k - 2) / 2)
                };
                assert_eq!(g.order() as u32, expected);
                assert_free(&g, n as usize);
            }
        }
        assert!(construct_fn(0, 1).is_err());
        assert!(construct_fn(2, 0).is_err());
        assert!(construct_fn(100, 9).is_err());
    }

    // Placement freezes: the alternatives the construction rules exclude
    // really do create fans, so the frozen sites are not arbitrary.

    #[test]
    fn odd_gadget_in_cycle_color_creates_fan() {
        // A second color-2 cycle next to the base gadget: fan in color 2.
        let bad = Blow {
            reduced: pentagon_coloring(2, 3).unwrap(),
            parts: vec![
                Gadget { c5: 2, tri: 3 },
                Gadget { c5: 2, tri: 4 },
                mono_k6(),
                mono_k6(),
                mono_k6(),
            ],
        };
        let g = materialize(&bad).unwrap();
        assert!(find_mono_fan(&g, 3, 2).is_some());
        // The frozen reading (cycle in a new color) stays clean.
        let good = Blow {
            reduced: pentagon_coloring(2, 3).unwrap(),
            parts: vec![
                Gadget { c5: 2, tri: 3 },
                Gadget { c5: 4, tri: 3 },
                mono_k6(),
                mono_k6(),
                mono_k6(),
            ],
        };
        let g = materialize(&good).unwrap();
        for c in 1..=4 {
            assert!(find_mono_fan(&g, 3, c).is_none());
        }
    }

    #[test]
    fn odd_gadget_at_diagonal_site_creates_fan() {
        // Triangles in color 3 joined by color 3 (distance-2 position).
        let bad = Blow {
            reduced: pentagon_coloring(2, 3).unwrap(),
            parts: vec![
                Gadget { c5: 2, tri: 3 },
                mono_k6(),
                Gadget { c5: 4, tri: 3 },
                mono_k6(),
                mono_k6(),
            ],
        };
        let g = materialize(&bad).unwrap();
        assert!(find_mono_fan(&g, 3, 3).is_some());
    }

    #[test]
    fn even_gadget_next_to_existing_cycle_creates_fan() {
        // Two color-2 cycles joined by color 2: fan in color 2.
        let bad = Blow {
            reduced: join2().unwrap(),
            parts: vec![Gadget { c5: 2, tri: 3 }, Gadget { c5: 2, tri: 5 }],
        };
        let g = materialize(&bad).unwrap();
        assert!(find_mono_fan(&g, 3, 2).is_some());
    }

    #[test]
    fn even_tree_upgrades_distinct_subcopies() {
        // In the 6-color tower the two K10 blocks sit in subcopies 0 and
        // 1; their new colors appear inside exactly one K2 each.
        let g = construct_f2_even(6).unwrap();
        let within_first = |c: Color, end: usize| {
            g.edges_of_color(c).edges().iter().filter(|&&(a, b)| a < end && b < end).count()
        };
        // Upgraded copies 0 and 1 span vertices 0..42 and 42..84.
        assert_eq!(within_first(5, 42), 1);
        assert_eq!(g.edges_of_color(6).edges().iter().filter(|&&(a, b)| (42..84).contains(&a) && (42..84).contains(&b)).count(), 1);
    }
}
