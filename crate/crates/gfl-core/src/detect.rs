//! Witness-producing detectors: rainbow triangles and monochromatic fans.
//!
//! A fan of order `m` in color `c` is a center vertex together with `m`
//! vertex-disjoint edges inside its color-`c` neighborhood, all edges
//! involved carrying color `c` (`m` triangles sharing exactly the center).

use alloc::vec;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::bitset::{clear_bit, count_bits, first_bit, iter_bits, test_bit, BitRows};
use crate::coloring::{Color, ColoredCompleteGraph, EdgeList};
use crate::error::{Error, Result};

/// Checkable evidence for a detector answer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Three vertices whose mutual edges use three distinct colors.
    RainbowTriangle { vertices: [usize; 3] },
    /// A fan: `edges` are vertex-disjoint, and every listed edge as well
    /// as every edge from `center` to a listed endpoint has color `color`.
    MonoFan { color: Color, center: usize, edges: Vec<(usize, usize)> },
}

/// Re-check a certificate against a graph by direct edge inspection.
pub fn validate_certificate(g: &ColoredCompleteGraph, cert: &Certificate) -> bool {
    let n = g.order();
    match cert {
        Certificate::RainbowTriangle { vertices: [u, v, w] } => {
            let (u, v, w) = (*u, *v, *w);
            if u >= n || v >= n || w >= n || u == v || u == w || v == w {
                return false;
            }
            let (a, b, c) = (g.color(u, v), g.color(u, w), g.color(v, w));
            a != b && a != c && b != c
        }
        Certificate::MonoFan { color, center, edges } => {
            if *center >= n || edges.is_empty() {
                return false;
            }
            let mut seen = vec![false; n];
            seen[*center] = true;
            for &(a, b) in edges {
                if a >= n || b >= n || a == b {
                    return false;
                }
                if seen[a] || seen[b] {
                    return false;
                }
                seen[a] = true;
                seen[b] = true;
                if g.color(a, b) != *color
                    || g.color(*center, a) != *color
                    || g.color(*center, b) != *color
                {
                    return false;
                }
            }
            true
        }
    }
}

/// First rainbow triangle in lexicographic `(u, v, w)` order, if any.
pub fn find_rainbow_triangle(g: &ColoredCompleteGraph) -> Option<Certificate> {
    let n = g.order();
    let colors = g.raw_colors();
    for u in 0..n {
        for v in u + 1..n {
            let cuv = colors[g.flat_index(u, v)];
            if v + 1 == n {
                continue;
            }
            // Rows for w > v are contiguous in both u's and v's strips.
            let iu = g.flat_index(u, v + 1);
            let iv = g.flat_index(v, v + 1);
            let len = n - v - 1;
            let row_u = &colors[iu..iu + len];
            let row_v = &colors[iv..iv + len];
            for t in 0..len {
                let (cuw, cvw) = (row_u[t], row_v[t]);
                if cuw != cvw && cuw != cuv && cvw != cuv {
                    return Some(Certificate::RainbowTriangle { vertices: [u, v, v + 1 + t] });
                }
            }
        }
    }
    None
}

/// One color's adjacency rows plus matching search state.
struct FanSearcher {
    n: usize,
    color: Color,
    adj: BitRows,
    degrees: Vec<u32>,
}

impl FanSearcher {
    fn new(g: &ColoredCompleteGraph, c: Color) -> Self {
        let n = g.order();
        let mut adj = BitRows::new(n);
        let mut degrees = vec![0u32; n];
        for (u, v, ec) in g.edges() {
            if ec == c {
                adj.set(u, v);
                adj.set(v, u);
                degrees[u] += 1;
                degrees[v] += 1;
            }
        }
        Self { n, color: c, adj, degrees }
    }

    /// Greedy matching inside `avail`, scanning edges lexicographically;
    /// stops after `m` pairs. Returns pairs found.
    fn greedy_matching(&self, avail: &mut [u64], m: usize, out: &mut Vec<(usize, usize)>) {
        let w = self.adj.words();
        let mut scratch = vec![0u64; w];
        while out.len() < m {
            let Some(a) = first_bit(avail) else { break };
            clear_bit(avail, a);
            let row = self.adj.row(a);
            for i in 0..w {
                scratch[i] = row[i] & avail[i];
            }
            if let Some(b) = first_bit(&scratch) {
                clear_bit(avail, b);
                out.push((a, b));
            }
            // An unmatched vertex stays dropped: every lex-later edge at it
            // was already considered via the partner scan.
        }
    }

    /// Exact search for `need` disjoint edges inside `avail`, lexicographic
    /// include-first order. Appends the pairs to `take` when found.
    fn exact_matching(
        &self,
        avail: &mut Vec<u64>,
        need: usize,
        take: &mut Vec<(usize, usize)>,
    ) -> bool {
        if need == 0 {
            return true;
        }
        let w = self.adj.words();
        loop {
            if count_bits(avail) < 2 * need {
                return false;
            }
            let Some(x) = first_bit(avail) else { return false };
            clear_bit(avail, x);
            let row = self.adj.row(x);
            let mut nb = vec![0u64; w];
            for i in 0..w {
                nb[i] = row[i] & avail[i];
            }
            if first_bit(&nb).is_none() {
                continue; // x cannot be matched; drop it
            }
            for y in iter_bits(&nb) {
                let mut sub = avail.clone();
                clear_bit(&mut sub, y);
                take.push((x, y));
                if self.exact_matching(&mut sub, need - 1, take) {
                    return true;
                }
                take.pop();
            }
            // Leaving x unmatched: keep scanning with x dropped.
        }
    }

    /// Disjoint-edges search in the color neighborhood of `center`.
    fn fan_at(&self, center: usize, m: usize) -> Option<Vec<(usize, usize)>> {
        if (self.degrees[center] as usize) < 2 * m {
            return None;
        }
        let mut avail: Vec<u64> = self.adj.row(center).to_vec();
        debug_assert!(!test_bit(&avail, center));
        let mut greedy = Vec::with_capacity(m);
        self.greedy_matching(&mut avail, m, &mut greedy);
        if greedy.len() >= m {
            greedy.truncate(m);
            return Some(greedy);
        }
        // A maximal matching is at least half a maximum one.
        if 2 * greedy.len() < m {
            return None;
        }
        let mut avail: Vec<u64> = self.adj.row(center).to_vec();
        let mut take = Vec::with_capacity(m);
        if self.exact_matching(&mut avail, m, &mut take) {
            Some(take)
        } else {
            None
        }
    }

    fn find(&self, m: usize) -> Option<Certificate> {
        for v in 0..self.n {
            if let Some(edges) = self.fan_at(v, m) {
                return Some(Certificate::MonoFan { color: self.color, center: v, edges });
            }
        }
        None
    }
}

/// First fan of order `m` in color `c`: smallest center, then the
/// lexicographic greedy matching (exact search only when the greedy bound
/// is inconclusive). Requires `m >= 1` and `1 <= c <= k`.
pub fn find_mono_fan(g: &ColoredCompleteGraph, m: usize, c: Color) -> Option<Certificate> {
    assert!(m >= 1, "fan order must be at least 1");
    assert!(c >= 1 && c <= g.palette(), "color outside palette");
    FanSearcher::new(g, c).find(m)
}

/// Largest `m` with a fan of order `m` in color `c`; 0 when color `c`
/// has no triangle. Binary search over [`find_mono_fan`].
pub fn max_fan_order(g: &ColoredCompleteGraph, c: Color) -> usize {
    assert!(c >= 1 && c <= g.palette(), "color outside palette");
    let searcher = FanSearcher::new(g, c);
    binary_search_max_fan(&searcher, g.order())
}

fn binary_search_max_fan(searcher: &FanSearcher, n: usize) -> usize {
    let (mut lo, mut best) = (1usize, 0usize);
    let mut hi = n.saturating_sub(1) / 2;
    while lo <= hi {
        let mid = lo + (hi - lo) / 2;
        if searcher.find(mid).is_some() {
            best = mid;
            lo = mid + 1;
        } else {
            if mid == 0 {
                break;
            }
            hi = mid - 1;
        }
    }
    best
}

/// Number of colors whose subgraph has a vertex of degree at least 2.
pub fn count_useful_colors(g: &ColoredCompleteGraph) -> usize {
    let n = g.order();
    let k = g.palette() as usize;
    let mut deg = vec![0u32; k * n];
    for (u, v, c) in g.edges() {
        let base = (c as usize - 1) * n;
        deg[base + u] += 1;
        deg[base + v] += 1;
    }
    (0..k).filter(|&ci| deg[ci * n..(ci + 1) * n].iter().any(|&d| d >= 2)).count()
}

/// Exhaustive fan search for cross-checking [`find_mono_fan`]: enumerates
/// candidate edge sets directly, no greedy shortcuts. Limited to 12
/// vertices.
pub fn brute_fan_oracle(
    g: &ColoredCompleteGraph,
    m: usize,
    c: Color,
) -> Result<Option<Certificate>> {
    const MAX: usize = 12;
    let n = g.order();
    if n > MAX {
        return Err(Error::OracleSize { n, max: MAX });
    }
    assert!(m >= 1, "fan order must be at least 1");
    if c == 0 || c > g.palette() {
        return Err(Error::Palette { color: c, palette: g.palette() });
    }
    for center in 0..n {
        let nbhd: Vec<usize> =
            (0..n).filter(|&x| x != center && g.color(center, x) == c).collect();
        let mut cand: Vec<(usize, usize)> = Vec::new();
        for (i, &a) in nbhd.iter().enumerate() {
            for &b in &nbhd[i + 1..] {
                if g.color(a, b) == c {
                    cand.push((a, b));
                }
            }
        }
        fn pick(
            cand: &[(usize, usize)],
            from: usize,
            need: usize,
            used: &mut [bool],
            take: &mut Vec<(usize, usize)>,
        ) -> bool {
            if need == 0 {
                return true;
            }
            for i in from..cand.len() {
                let (a, b) = cand[i];
                if used[a] || used[b] {
                    continue;
                }
                used[a] = true;
                used[b] = true;
                take.push((a, b));
                if pick(cand, i + 1, need - 1, used, take) {
                    return true;
                }
                take.pop();
                used[a] = false;
                used[b] = false;
            }
            false
        }
        let mut used = vec![false; n];
        let mut take = Vec::with_capacity(m);
        if pick(&cand, 0, m, &mut used, &mut take) {
            return Ok(Some(Certificate::MonoFan { color: c, center, edges: take }));
        }
    }
    Ok(None)
}

/// Whether the edge set is a subgraph of `C4`, of `C5`, or of two disjoint
/// triangles. Equivalent to: maximum degree at most 2, no three pairwise
/// disjoint edges, and every cycle component of length 3, 4 or 5.
pub fn embeds_in_c4_c5_2k3(edges: &EdgeList) -> bool {
    let verts = edges.vertices();
    assert!(verts.len() <= 16, "edge list limited to 16 vertices");
    if edges.is_empty() {
        return true;
    }
    let id = |x: usize| verts.binary_search(&x).unwrap();
    let nv = verts.len();
    let mut deg = vec![0u8; nv];
    let mut adj = vec![0u16; nv];
    for &(a, b) in edges.edges() {
        let (a, b) = (id(a), id(b));
        deg[a] += 1;
        deg[b] += 1;
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    if deg.iter().any(|&d| d > 2) {
        return false;
    }
    // With max degree 2 there are at most 16 edges; cubic scan is cheap.
    let es = edges.edges();
    for i in 0..es.len() {
        for j in i + 1..es.len() {
            if disjoint(es[i], es[j]) {
                for e in &es[j + 1..] {
                    if disjoint(es[i], *e) && disjoint(es[j], *e) {
                        return false;
                    }
                }
            }
        }
    }
    // Components are paths or cycles; only short cycles embed.
    let mut seen = 0u16;
    for s in 0..nv {
        if seen & (1 << s) != 0 {
            continue;
        }
        let mut comp = 1u16 << s;
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0u16;
            let mut f = frontier;
            while f != 0 {
                let x = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= adj[x] & !comp;
            }
            comp |= next;
            frontier = next;
        }
        seen |= comp;
        let cv = comp.count_ones() as usize;
        let ce: usize = es
            .iter()
            .filter(|&&(a, b)| comp & (1 << id(a)) != 0 && comp & (1 << id(b)) != 0)
            .count();
        if ce == cv && !(3..=5).contains(&cv) {
            return false;
        }
        debug_assert!(ce == cv || ce + 1 == cv, "degree-2 component is a path or cycle");
    }
    true
}

#[inline]
fn disjoint(a: (usize, usize), b: (usize, usize)) -> bool {
    a.0 != b.0 && a.0 != b.1 && a.1 != b.0 && a.1 != b.1
}

/// Combined detector sweep used by the command-line verifier.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub order: usize,
    pub palette: Color,
    /// First rainbow triangle, if the coloring has one.
    pub rainbow: Option<Certificate>,
    /// Fan order the sweep searched for.
    pub fan_order: usize,
    /// One fan certificate per color that contains one.
    pub mono_fans: Vec<Certificate>,
    pub useful_colors: usize,
    /// `(color, largest fan order)` for every palette color.
    pub max_fan_orders: Vec<(Color, usize)>,
}

/// Run every detector: rainbow scan, an order-`m` fan search per color,
/// useful-color count and per-color maximum fan orders.
pub fn full_verify(g: &ColoredCompleteGraph, m: usize) -> VerifyReport {
    let mut mono_fans = Vec::new();
    let mut max_fan_orders = Vec::new();
    for c in 1..=g.palette() {
        let searcher = FanSearcher::new(g, c);
        if let Some(cert) = searcher.find(m) {
            mono_fans.push(cert);
        }
        max_fan_orders.push((c, binary_search_max_fan(&searcher, g.order())));
    }
    VerifyReport {
        order: g.order(),
        palette: g.palette(),
        rainbow: find_rainbow_triangle(g),
        fan_order: m,
        mono_fans,
        useful_colors: count_useful_colors(g),
        max_fan_orders,
    }
}
