//! Gallai partitions: nontrivial vertex partitions whose parts meet in
//! monochromatic joins using at most two colors overall, the reduced
//! graphs they induce, and the blow-up operation that inverts them.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::coloring::{Color, ColoredCompleteGraph};
use crate::detect::find_rainbow_triangle;
use crate::error::{Error, Result};

/// A quotient of a [`ColoredCompleteGraph`]; always carries at most two
/// distinct edge colors when produced by [`find_gallai_partition`].
pub type ReducedGraph = ColoredCompleteGraph;

/// A vertex partition where every pair of parts is joined in one color.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GallaiPartition {
    /// Parts as ascending vertex lists, ordered by smallest member.
    pub parts: Vec<Vec<usize>>,
    /// Distinct colors appearing between parts, ascending; at most 2.
    pub between_colors: Vec<Color>,
    /// Join color for every unordered part pair, lexicographic by `(i, j)`.
    pub pair_colors: Vec<PairColor>,
}

/// Join color of the part pair `(i, j)`, `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairColor {
    pub i: usize,
    pub j: usize,
    pub c: Color,
}

/// The unique (up to swapping the two colors) 2-coloring of `K_5` in which
/// neither color forms a triangle: color `a` on the 5-cycle `(i, i+1)`,
/// color `b` on the diagonals `(i, i+2)`.
pub fn pentagon_coloring(a: Color, b: Color) -> Result<ColoredCompleteGraph> {
    if a == b {
        return Err(Error::Palette { color: b, palette: a.max(b) });
    }
    if a == 0 || b == 0 {
        return Err(Error::Palette { color: 0, palette: a.max(b) });
    }
    ColoredCompleteGraph::from_fn(5, a.max(b), |u, v| {
        let d = v - u;
        if d == 1 || d == 4 {
            a
        } else {
            b
        }
    })
}

/// Substitute `parts[i]` for vertex `i` of `reduced`: edges inside a part
/// keep that part's coloring, edges between the images of `i` and `j` all
/// take `reduced`'s color of `(i, j)`. The result's palette is the largest
/// palette among the inputs.
pub fn blow_up(
    reduced: &ColoredCompleteGraph,
    parts: &[ColoredCompleteGraph],
) -> Result<ColoredCompleteGraph> {
    let t = reduced.order();
    if parts.len() != t {
        return Err(Error::Param(format!(
            "reduced graph has {t} vertices but {} parts were given",
            parts.len()
        )));
    }
    let mut k = reduced.palette();
    let mut offsets = Vec::with_capacity(t + 1);
    let mut n = 0usize;
    for p in parts {
        offsets.push(n);
        n += p.order();
        k = k.max(p.palette());
    }
    offsets.push(n);
    if n > crate::coloring::MAX_ORDER {
        return Err(Error::Param(format!("blow-up order {n} exceeds {}", crate::coloring::MAX_ORDER)));
    }
    let mut owner = Vec::with_capacity(n);
    for (i, p) in parts.iter().enumerate() {
        owner.extend(core::iter::repeat(i).take(p.order()));
    }
    ColoredCompleteGraph::from_fn(n, k, |u, v| {
        let (pu, pv) = (owner[u], owner[v]);
        if pu == pv {
            parts[pu].color(u - offsets[pu], v - offsets[pu])
        } else {
            reduced.color(pu, pv)
        }
    })
}

struct Dsu {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Self { parent: (0..n as u32).collect(), size: vec![1; n] }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let gp = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = gp;
            x = gp;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            core::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
        true
    }
}

/// Outcome of one color-pair probe: the finest partition whose internal
/// edges avoid `{a, b}` and whose part pairs are monochromatic.
fn probe_pair(g: &ColoredCompleteGraph, a: Color, b: Color) -> Dsu {
    let n = g.order();
    let mut dsu = Dsu::new(n);
    for (u, v, c) in g.edges() {
        if c != a && c != b {
            dsu.union(u as u32, v as u32);
        }
    }
    // Merge part pairs seen with two colors until every pair is mono.
    loop {
        let mut rep_idx = vec![u32::MAX; n];
        let mut reps = Vec::new();
        for v in 0..n {
            let r = dsu.find(v as u32);
            if rep_idx[r as usize] == u32::MAX {
                rep_idx[r as usize] = reps.len() as u32;
                reps.push(r);
            }
        }
        let t = reps.len();
        if t <= 1 {
            return dsu;
        }
        let mut first = vec![0u8; t * t];
        let mut merges: Vec<(u32, u32)> = Vec::new();
        for (u, v, c) in g.edges() {
            let (ru, rv) = (dsu.find(u as u32), dsu.find(v as u32));
            if ru == rv {
                continue;
            }
            let (i, j) = (rep_idx[ru as usize] as usize, rep_idx[rv as usize] as usize);
            let cell = &mut first[i.min(j) * t + i.max(j)];
            if *cell == 0 {
                *cell = c;
            } else if *cell != c {
                merges.push((ru, rv));
            }
        }
        if merges.is_empty() {
            return dsu;
        }
        for (x, y) in merges {
            dsu.union(x, y);
        }
    }
}

fn partition_from_dsu(g: &ColoredCompleteGraph, dsu: &mut Dsu) -> GallaiPartition {
    let n = g.order();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut rep_idx = vec![usize::MAX; n];
    for v in 0..n {
        let r = dsu.find(v as u32) as usize;
        if rep_idx[r] == usize::MAX {
            rep_idx[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[rep_idx[r]].push(v);
    }
    // Scanning vertices ascending already orders parts by smallest member.
    let t = groups.len();
    let mut pair_colors = Vec::with_capacity(t * (t - 1) / 2);
    let mut between = Vec::new();
    for i in 0..t {
        for j in i + 1..t {
            let c = g.color(groups[i][0], groups[j][0]);
            pair_colors.push(PairColor { i, j, c });
            if !between.contains(&c) {
                between.push(c);
            }
        }
    }
    between.sort_unstable();
    GallaiPartition { parts: groups, between_colors: between, pair_colors }
}

/// Find a Gallai partition: at least two parts, every part pair joined in
/// one color, at most two join colors overall.
///
/// With at most two colors present the singleton partition is returned.
/// Otherwise every unordered pair of present colors is probed for the
/// finest valid partition avoiding that pair inside parts, and a probe
/// with the most parts wins (ties: lexicographically smallest pair).
pub fn find_gallai_partition(g: &ColoredCompleteGraph) -> Result<GallaiPartition> {
    let n = g.order();
    if n < 2 {
        return Err(Error::Param(String::from("partition needs at least 2 vertices")));
    }
    if let Some(cert) = find_rainbow_triangle(g) {
        return Err(Error::RainbowPresent(cert));
    }
    let present = g.colors_present();
    if present.len() <= 2 {
        let mut dsu = Dsu::new(n);
        return Ok(partition_from_dsu(g, &mut dsu));
    }
    let mut best: Option<(usize, Dsu)> = None;
    for ai in 0..present.len() {
        for bi in ai + 1..present.len() {
            let mut dsu = probe_pair(g, present[ai], present[bi]);
            let t = (0..n).filter(|&v| dsu.find(v as u32) == v as u32).count();
            if t >= 2 && best.as_ref().map_or(true, |(bt, _)| t > *bt) {
                best = Some((t, dsu));
            }
        }
    }
    match best {
        Some((_, mut dsu)) => Ok(partition_from_dsu(g, &mut dsu)),
        None => Err(Error::Internal(String::from(
            "rainbow-free coloring with three colors admitted no partition",
        ))),
    }
}

/// Check a partition against a graph.
///
/// Returns `PartitionShape` when `parts` is not a partition of the vertex
/// set; otherwise `Ok(true)` iff all structural invariants hold: at least
/// two parts, every part pair monochromatic with `pair_colors` recording
/// exactly the observed colors, and `between_colors` a superset of the
/// observed join colors with at most two entries.
pub fn validate_partition(g: &ColoredCompleteGraph, p: &GallaiPartition) -> Result<bool> {
    let n = g.order();
    let mut seen = vec![false; n];
    for part in &p.parts {
        if part.is_empty() {
            return Err(Error::PartitionShape(String::from("empty part")));
        }
        for &v in part {
            if v >= n {
                return Err(Error::PartitionShape(format!("vertex {v} out of range")));
            }
            if seen[v] {
                return Err(Error::PartitionShape(format!("vertex {v} in two parts")));
            }
            seen[v] = true;
        }
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return Err(Error::PartitionShape(format!("vertex {v} in no part")));
    }
    let t = p.parts.len();
    if t < 2 {
        return Ok(false);
    }
    if p.between_colors.len() > 2 {
        return Ok(false);
    }
    let mut table = vec![0u8; t * t];
    for pc in &p.pair_colors {
        if pc.i >= pc.j || pc.j >= t || pc.c == 0 {
            return Ok(false);
        }
        let cell = &mut table[pc.i * t + pc.j];
        if *cell != 0 {
            return Ok(false); // duplicate entry
        }
        *cell = pc.c;
    }
    if p.pair_colors.len() != t * (t - 1) / 2 {
        return Ok(false);
    }
    for i in 0..t {
        for j in i + 1..t {
            let c = table[i * t + j];
            if !p.between_colors.contains(&c) {
                return Ok(false);
            }
            for &u in &p.parts[i] {
                for &v in &p.parts[j] {
                    if g.color(u, v) != c {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Contract each part to one vertex; edge `(i, j)` takes the join color
/// of parts `i` and `j`. The input partition must validate.
pub fn quotient(g: &ColoredCompleteGraph, p: &GallaiPartition) -> Result<ReducedGraph> {
    if !validate_partition(g, p)? {
        return Err(Error::PartitionShape(String::from("partition invariants do not hold")));
    }
    let t = p.parts.len();
    let mut table = vec![0u8; t * t];
    for pc in &p.pair_colors {
        table[pc.i * t + pc.j] = pc.c;
    }
    ColoredCompleteGraph::from_fn(t, g.palette(), |i, j| table[i * t + j])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::ColoredCompleteGraph as Graph;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pentagon_shape() {
        let g = pentagon_coloring(2, 3).unwrap();
        assert_eq!(g.order(), 5);
        assert_eq!(g.palette(), 3);
        for i in 0..5usize {
            assert_eq!(g.color(i, (i + 1) % 5), 2);
            assert_eq!(g.color(i, (i + 2) % 5), 3);
        }
        // Neither color forms a triangle.
        assert!(crate::detect::find_mono_fan(&g, 1, 2).is_none());
        assert!(crate::detect::find_mono_fan(&g, 1, 3).is_none());
        assert!(find_rainbow_triangle(&g).is_none());
        assert!(matches!(pentagon_coloring(2, 2), Err(Error::Palette { .. })));
        assert!(matches!(pentagon_coloring(0, 1), Err(Error::Palette { .. })));
    }

    #[test]
    fn blow_up_places_parts_and_joins() {
        let reduced = pentagon_coloring(2, 3).unwrap();
        let parts: Vec<Graph> =
            (0..5).map(|_| Graph::new_uniform(4, 1, 1).unwrap()).collect();
        let g = blow_up(&reduced, &parts).unwrap();
        assert_eq!(g.order(), 20);
        assert_eq!(g.palette(), 3);
        assert_eq!(g.color(0, 3), 1); // inside part 0
        assert_eq!(g.color(0, 4), 2); // parts 0-1, consecutive
        assert_eq!(g.color(0, 8), 3); // parts 0-2, distance two
        assert!(find_rainbow_triangle(&g).is_none());
        assert!(blow_up(&reduced, &parts[..4]).is_err());
    }

    #[test]
    fn two_color_input_gives_singletons() {
        let g = Graph::from_fn(6, 2, |u, v| if (u + v) % 2 == 0 { 1 } else { 2 }).unwrap();
        let p = find_gallai_partition(&g).unwrap();
        assert_eq!(p.parts.len(), 6);
        assert!(p.parts.iter().all(|part| part.len() == 1));
        assert!(p.between_colors.len() <= 2);
        assert!(validate_partition(&g, &p).unwrap());
        let q = quotient(&g, &p).unwrap();
        for (u, v, c) in g.edges() {
            assert_eq!(q.color(u, v), c);
        }
    }

    #[test]
    fn partition_recovers_pentagon_blow_up() {
        let reduced = pentagon_coloring(2, 3).unwrap();
        let parts: Vec<Graph> =
            (0..5).map(|_| Graph::new_uniform(4, 3, 1).unwrap()).collect();
        let g = blow_up(&reduced, &parts).unwrap();
        let p = find_gallai_partition(&g).unwrap();
        assert_eq!(p.parts.len(), 5);
        assert_eq!(p.between_colors, vec![2, 3]);
        assert_eq!(p.parts[0], vec![0, 1, 2, 3]);
        assert!(validate_partition(&g, &p).unwrap());
        let q = quotient(&g, &p).unwrap();
        assert_eq!(q.order(), 5);
        for (u, v, c) in reduced.edges() {
            assert_eq!(q.color(u, v), c);
        }
    }

    #[test]
    fn rainbow_input_is_rejected_with_certificate() {
        let g = Graph::from_fn(3, 3, |u, v| (u + v) as Color).unwrap();
        match find_gallai_partition(&g) {
            Err(Error::RainbowPresent(cert)) => {
                assert!(crate::detect::validate_certificate(&g, &cert));
            }
            other => panic!("expected RainbowPresent, got {other:?}"),
        }
    }

    #[test]
    fn validation_rejects_bad_partitions() {
        let g = Graph::new_uniform(4, 2, 1).unwrap();
        let whole = GallaiPartition {
            parts: vec![vec![0, 1, 2, 3]],
            between_colors: vec![],
            pair_colors: vec![],
        };
        assert!(!validate_partition(&g, &whole).unwrap());
        let overlap = GallaiPartition {
            parts: vec![vec![0, 1], vec![1, 2, 3]],
            between_colors: vec![1],
            pair_colors: vec![PairColor { i: 0, j: 1, c: 1 }],
        };
        assert!(matches!(validate_partition(&g, &overlap), Err(Error::PartitionShape(_))));
        let gap = GallaiPartition {
            parts: vec![vec![0, 1], vec![2]],
            between_colors: vec![1],
            pair_colors: vec![PairColor { i: 0, j: 1, c: 1 }],
        };
        assert!(matches!(validate_partition(&g, &gap), Err(Error::PartitionShape(_))));
        let wrong_color = GallaiPartition {
            parts: vec![vec![0, 1], vec![2, 3]],
            between_colors: vec![2],
            pair_colors: vec![PairColor { i: 0, j: 1, c: 2 }],
        };
        assert!(!validate_partition(&g, &wrong_color).unwrap());
        let good = GallaiPartition {
            parts: vec![vec![0, 1], vec![2, 3]],
            between_colors: vec![1],
            pair_colors: vec![PairColor { i: 0, j: 1, c: 1 }],
        };
        assert!(validate_partition(&g, &good).unwrap());
        assert!(matches!(quotient(&g, &whole), Err(Error::PartitionShape(_))));
    }

    #[test]
    fn quotient_after_blow_up_is_edge_exact_on_random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..40 {
            let t = rng.gen_range(2..=5);
            // Random rainbow-free reduced graph: at most 2 colors.
            let reduced =
                Graph::from_fn(t, 4, |_, _| if rng.gen() { 3 } else { 4 }).unwrap();
            let parts: Vec<Graph> = (0..t)
                .map(|_| {
                    let sz = rng.gen_range(1..=4);
                    let c = rng.gen_range(1..=2);
                    Graph::new_uniform(sz, 4, c).unwrap()
                })
                .collect();
            let g = blow_up(&reduced, &parts).unwrap();
            let mut start = 0;
            let canonical: Vec<Vec<usize>> = parts
                .iter()
                .map(|p| {
                    let r: Vec<usize> = (start..start + p.order()).collect();
                    start += p.order();
                    r
                })
                .collect();
            let t2 = canonical.len();
            let mut pair_colors = Vec::new();
            let mut between = Vec::new();
            for i in 0..t2 {
                for j in i + 1..t2 {
                    let c = reduced.color(i, j);
                    pair_colors.push(PairColor { i, j, c });
                    if !between.contains(&c) {
                        between.push(c);
                    }
                }
            }
            between.sort_unstable();
            let p = GallaiPartition { parts: canonical, between_colors: between, pair_colors };
            assert!(validate_partition(&g, &p).unwrap());
            let q = quotient(&g, &p).unwrap();
            assert_eq!(q.order(), reduced.order());
            for (u, v, c) in reduced.edges() {
                assert_eq!(q.color(u, v), c);
            }
        }
    }

    #[test]
    fn partition_json_schema() {
        let p = GallaiPartition {
            parts: vec![vec![0, 1], vec![2]],
            between_colors: vec![2],
            pair_colors: vec![PairColor { i: 0, j: 1, c: 2 }],
        };
        let j = serde_json::to_string(&p).unwrap();
        assert_eq!(
            j,
            r#"{"parts":[[0,1],[2]],"between_colors":[2],"pair_colors":[{"i":0,"j":1,"c":2}]}"#
        );
        assert_eq!(serde_json::from_str::<GallaiPartition>(&j).unwrap(), p);
    }
}
