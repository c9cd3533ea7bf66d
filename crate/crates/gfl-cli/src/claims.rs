//! Exhaustive verification of the finite structural claims.
//!
//! Three statements about small complete graphs are checked by full
//! enumeration rather than trusted:
//!
//! * [`check_fact_k7`]: in a 2-colored `K_7` whose color-1 graph embeds
//!   in a 4-cycle, a 5-cycle, or two disjoint triangles, color 2 always
//!   contains a fan `F_3`.
//! * [`check_claim_f1`]: in a rainbow-triangle-free 3-colored `K_9`
//!   whose color-1 and color-2 graphs each embed in one of those hosts,
//!   color 3 always contains an `F_3`.
//! * [`check_claim_f2k8`]: a 3-colored `K_9` with exactly one edge in
//!   color 3 and no rainbow triangle always contains an `F_2` in color
//!   1 or 2. (The corresponding ten-vertex statement with two special
//!   edges reduces to this one by contracting one of them.)
//!
//! In every outcome, `Exhausted` means the statement survived the full
//! enumeration and `Witness` carries a counterexample coloring.

use crate::search::{run_tied_pair, SearchBudget, SearchOutcome, SearchStats, Verdict};
use gfl_core::detect::find_mono_fan;
use gfl_core::ColoredCompleteGraph;
use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

/// Flat index of edge (u, v), u < v, in row-major upper-triangular
/// order on n vertices. Bit positions in the edge masks below.
fn edge_idx(n: usize, u: usize, v: usize) -> u32 {
    debug_assert!(u < v && v < n);
    (u * n - u * (u + 1) / 2 + (v - u - 1)) as u32
}

/// Every edge set on `n` labeled vertices that embeds in a 4-cycle, a
/// 5-cycle, or two disjoint triangles, as edge-index bitmasks. Each
/// host placement contributes all of its edge subsets, so the catalog
/// is closed under taking subgraphs and contains the empty set.
///
/// Requires `n >= 6` so every host fits entirely: an embedded image
/// then always extends to a full placement, making the subset closure
/// over full placements exhaustive.
fn host_catalog(n: usize) -> BTreeSet<u64> {
    assert!((6..=11).contains(&n), "host catalog needs 6 <= n and u64 edge masks");
    let mut out = BTreeSet::new();
    let mut insert_subsets = |cycle: &[usize]| {
        let mut edges = Vec::with_capacity(cycle.len());
        for i in 0..cycle.len() {
            let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            edges.push(edge_idx(n, a.min(b), a.max(b)));
        }
        for subset in 0u32..(1 << edges.len()) {
            let mut mask = 0u64;
            for (i, &e) in edges.iter().enumerate() {
                if subset >> i & 1 == 1 {
                    mask |= 1 << e;
                }
            }
            out.insert(mask);
        }
    };

    // 4-cycles and 5-cycles over all injective vertex tuples. Each
    // cycle is produced several times; the set deduplicates.
    let mut verts: Vec<usize> = Vec::new();
    fn tuples(n: usize, len: usize, verts: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if verts.len() == len {
            f(verts);
            return;
        }
        for v in 0..n {
            if !verts.contains(&v) {
                verts.push(v);
                tuples(n, len, verts, f);
                verts.pop();
            }
        }
    }
    tuples(n, 4, &mut verts, &mut |c| insert_subsets(c));
    tuples(n, 5, &mut verts, &mut |c| insert_subsets(c));

    // Two disjoint triangles: subsets factor through the six edges.
    let mut triples: Vec<[usize; 3]> = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                triples.push([a, b, c]);
            }
        }
    }
    for (i, t1) in triples.iter().enumerate() {
        for t2 in triples.iter().skip(i + 1) {
            if t1.iter().any(|v| t2.contains(v)) {
                continue;
            }
            let mut edges = Vec::with_capacity(6);
            for t in [t1, t2] {
                edges.push(edge_idx(n, t[0], t[1]));
                edges.push(edge_idx(n, t[0], t[2]));
                edges.push(edge_idx(n, t[1], t[2]));
            }
            for subset in 0u32..(1 << 6) {
                let mut mask = 0u64;
                for (j, &e) in edges.iter().enumerate() {
                    if subset >> j & 1 == 1 {
                        mask |= 1 << e;
                    }
                }
                out.insert(mask);
            }
        }
    }
    out
}

/// Canonical key of a mask under vertex relabeling.
///
/// Catalog graphs are disjoint unions of paths and cycles, so the
/// multiset of components, each tagged cycle-or-path with its edge
/// count, is a complete isomorphism invariant.
fn component_key(n: usize, mask: u64) -> Vec<(bool, u8)> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    let mut edge_count = vec![0u8; n];
    for u in 0..n {
        for v in (u + 1)..n {
            if mask >> edge_idx(n, u, v) & 1 == 1 {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                if ru != rv {
                    parent[ru] = rv;
                }
            }
        }
    }
    for u in 0..n {
        for v in (u + 1)..n {
            if mask >> edge_idx(n, u, v) & 1 == 1 {
                let r = find(&mut parent, u);
                edge_count[r] += 1;
            }
        }
    }
    let mut vert_count = vec![0u8; n];
    for v in 0..n {
        let r = find(&mut parent, v);
        vert_count[r] += 1;
    }
    let mut key: Vec<(bool, u8)> = (0..n)
        .filter(|&r| find(&mut parent, r) == r && edge_count[r] > 0)
        .map(|r| (edge_count[r] == vert_count[r], edge_count[r]))
        .collect();
    key.sort_unstable();
    key
}

/// One representative mask per isomorphism class of the catalog: the
/// smallest mask of each class, in ascending order.
fn orbit_representatives(n: usize, catalog: &BTreeSet<u64>) -> Vec<u64> {
    let mut reps: BTreeMap<Vec<(bool, u8)>, u64> = BTreeMap::new();
    for &mask in catalog {
        reps.entry(component_key(n, mask)).or_insert(mask);
    }
    let mut out: Vec<u64> = reps.into_values().collect();
    out.sort_unstable();
    out
}

/// Build the 2-colored K_n with `mask` edges in color 1, rest color 2.
fn two_colored(n: usize, mask: u64) -> ColoredCompleteGraph {
    ColoredCompleteGraph::from_fn(n, 2, |u, v| {
        if mask >> edge_idx(n, u, v) & 1 == 1 {
            1
        } else {
            2
        }
    })
    .expect("valid 2-coloring")
}

/// Build the 3-colored K_n with `s1` edges color 1, `s2` color 2, rest
/// color 3. The masks must be disjoint.
fn three_colored(n: usize, s1: u64, s2: u64) -> ColoredCompleteGraph {
    debug_assert_eq!(s1 & s2, 0);
    ColoredCompleteGraph::from_fn(n, 3, |u, v| {
        let bit = edge_idx(n, u, v);
        if s1 >> bit & 1 == 1 {
            1
        } else if s2 >> bit & 1 == 1 {
            2
        } else {
            3
        }
    })
    .expect("valid 3-coloring")
}

/// All vertex triples of K_n as edge-index triples, for rainbow tests.
fn triangle_index(n: usize) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            for w in (v + 1)..n {
                out.push((edge_idx(n, u, v), edge_idx(n, u, w), edge_idx(n, v, w)));
            }
        }
    }
    out
}

/// Does the 3-coloring defined by disjoint masks s1 (color 1) and s2
/// (color 2) contain a rainbow triangle?
fn masks_have_rainbow(s1: u64, s2: u64, triangles: &[(u32, u32, u32)]) -> bool {
    let color = |e: u32| -> u8 {
        if s1 >> e & 1 == 1 {
            1
        } else if s2 >> e & 1 == 1 {
            2
        } else {
            3
        }
    };
    triangles.iter().any(|&(a, b, c)| {
        let (ca, cb, cc) = (color(a), color(b), color(c));
        ca != cb && ca != cc && cb != cc
    })
}

/// Check that every 2-colored K_7 whose color-1 graph embeds in C₄,
/// C₅, or 2K₃ has a monochromatic F₃ in color 2.
///
/// Bounded enumeration over the full catalog of embeddable color-1
/// sets, no budget needed. `Exhausted` = verified; a counterexample
/// would come back as `Witness`.
pub fn check_fact_k7() -> SearchOutcome {
    let start = Instant::now();
    let catalog = host_catalog(7);
    let mut nodes = 0u64;
    for &mask in &catalog {
        nodes += 1;
        let g = two_colored(7, mask);
        if find_mono_fan(&g, 3, 2).is_none() {
            return SearchOutcome {
                verdict: Verdict::Witness,
                witness: Some(g),
                stats: SearchStats { nodes, prunes: 0, elapsed: start.elapsed() },
            };
        }
    }
    SearchOutcome {
        verdict: Verdict::Exhausted,
        witness: None,
        stats: SearchStats { nodes, prunes: 0, elapsed: start.elapsed() },
    }
}

/// Check that every rainbow-free 3-colored K_9 whose color-1 and
/// color-2 graphs each embed in C₄, C₅, or 2K₃ has an F₃ in color 3.
///
/// The color classes are edge-disjoint by definition of a coloring;
/// vertex overlap is allowed and pairs producing a rainbow triangle
/// are filtered out, both counted as prunes. Color-1 placements are
/// reduced to orbit representatives under vertex relabeling, which is
/// sound because the hypothesis family and the conclusion are both
/// relabeling-invariant and the catalog is relabeling-closed.
pub fn check_claim_f1(budget: &SearchBudget) -> SearchOutcome {
    let start = Instant::now();
    let catalog = host_catalog(9);
    let reps = orbit_representatives(9, &catalog);
    let triangles = triangle_index(9);
    let mut nodes = 0u64;
    let mut prunes = 0u64;
    for &s1 in &reps {
        for &s2 in &catalog {
            nodes += 1;
            if nodes % 4096 == 0 {
                let over_nodes = budget.max_nodes().is_some_and(|cap| nodes > cap);
                let over_time = budget.max_duration().is_some_and(|cap| start.elapsed() > cap);
                if over_nodes || over_time {
                    return SearchOutcome {
                        verdict: Verdict::BudgetExceeded,
                        witness: None,
                        stats: SearchStats { nodes, prunes, elapsed: start.elapsed() },
                    };
                }
            }
            if s1 & s2 != 0 || masks_have_rainbow(s1, s2, &triangles) {
                prunes += 1;
                continue;
            }
            let g = three_colored(9, s1, s2);
            if find_mono_fan(&g, 3, 3).is_none() {
                return SearchOutcome {
                    verdict: Verdict::Witness,
                    witness: Some(g),
                    stats: SearchStats { nodes, prunes, elapsed: start.elapsed() },
                };
            }
        }
    }
    SearchOutcome {
        verdict: Verdict::Exhausted,
        witness: None,
        stats: SearchStats { nodes, prunes, elapsed: start.elapsed() },
    }
}

/// Check the single-extra-edge statement on K_9: color edge (0, 1) in
/// color 3 (vertex symmetry makes its position irrelevant), and 2-color
/// everything else in colors 1 and 2. Rainbow-freeness forces
/// color(0, w) = color(1, w) for every w, encoded as tied assignments,
/// so unequal pairs are never explored. Every reachable complete
/// coloring would be a counterexample; `Exhausted` verifies the claim.
///
/// Color 3 itself has one edge and a fan needs at least three, so no
/// separate check on color 3 is required.
pub fn check_claim_f2k8() -> SearchOutcome {
    check_claim_f2k8_sized(9, &SearchBudget::unlimited(), 1)
}

/// [`check_claim_f2k8`] with explicit order, budget, and threads. The
/// 5-vertex instance is the control: F₂-free tied colorings of K₅
/// exist, so the search must reach a leaf and return `Witness` there,
/// showing exhaustion at 9 comes from pruning real fans, not from a
/// kernel that rejects everything.
pub fn check_claim_f2k8_sized(n: usize, budget: &SearchBudget, threads: usize) -> SearchOutcome {
    run_tied_pair(2, n, 3, 3, budget, threads)
}

/// Two-sided confirmation of a 2-color fan threshold: K_{t-1} admits a
/// fan-free coloring and K_t does not.
#[derive(Debug, Clone)]
pub struct FanRamseyCheck {
    pub m: u32,
    /// The claimed threshold t.
    pub threshold: usize,
    /// Search on K_{t-1}; expected `Witness`.
    pub below: SearchOutcome,
    /// Search on K_t; expected `Exhausted`.
    pub at: SearchOutcome,
}

impl FanRamseyCheck {
    /// Collapse to a single verdict: `Exhausted` when the threshold is
    /// confirmed on both sides, `BudgetExceeded` when either side ran
    /// out, `Witness` when the searches contradict the claimed value.
    pub fn verdict(&self) -> Verdict {
        if self.below.verdict == Verdict::BudgetExceeded || self.at.verdict == Verdict::BudgetExceeded
        {
            Verdict::BudgetExceeded
        } else if self.below.verdict == Verdict::Witness && self.at.verdict == Verdict::Exhausted {
            Verdict::Exhausted
        } else {
            Verdict::Witness
        }
    }
}

/// Known 2-color thresholds for small fans: 6 for the triangle fan
/// F₁ (the classical triangle value), 9 for F₂, 13 for F₃.
pub fn fan_ramsey_threshold(m: u32) -> Option<usize> {
    match m {
        1 => Some(6),
        2 => Some(9),
        3 => Some(13),
        _ => None,
    }
}

/// Re-verify a small fan threshold from scratch with [`crate::search::ramsey2_decide_with`].
/// Supported for m in 1..=3; the m = 3 run is a stretch: K_13
/// exhaustion is expected to exceed any desk-scale budget and comes
/// back as an honest `BudgetExceeded`.
///
/// Runs in vertex-incremental order: witnesses extend complete K_t
/// prefixes greedily, so the below-threshold side lands in
/// milliseconds even at K_12, where the lexicographic order backtracks
/// for minutes.
pub fn check_fan_ramsey(m: u32, budget: &SearchBudget, threads: usize) -> Option<FanRamseyCheck> {
    let threshold = fan_ramsey_threshold(m)?;
    let order = crate::search::EdgeOrder::VertexIncremental;
    let below = crate::search::ramsey2_decide_with(m, threshold - 1, budget, order, threads);
    let at = crate::search::ramsey2_decide_with(m, threshold, budget, order, threads);
    Some(FanRamseyCheck { m, threshold, below, at })
}
