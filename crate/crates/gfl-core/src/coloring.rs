//! Edge-colored complete graphs and the `.gcg` interchange format.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Color identifier. Valid values are `1..=k` for a palette of size `k`;
/// 0 is reserved as the unassigned sentinel inside [`GraphBuilder`].
pub type Color = u8;

/// Largest supported graph order.
pub const MAX_ORDER: usize = 65535;

#[inline]
fn edge_index(n: usize, u: usize, v: usize) -> usize {
    debug_assert!(u < v && v < n);
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

fn check_endpoints(n: usize, u: usize, v: usize) -> Result<(usize, usize)> {
    if u >= n {
        return Err(Error::Index { v: u, n });
    }
    if v >= n {
        return Err(Error::Index { v, n });
    }
    if u == v {
        return Err(Error::SelfLoop { v: u });
    }
    Ok(if u < v { (u, v) } else { (v, u) })
}

/// An edge coloring of the complete graph `K_n` with palette `1..=k`.
///
/// Colors are stored row-major in the upper triangle: the edge order is
/// `(0,1), (0,2), ..., (0,n-1), (1,2), ...`. Instances are immutable;
/// mutation happens through [`GraphBuilder`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ColoredCompleteGraph {
    n: usize,
    k: Color,
    colors: Box<[Color]>,
}

impl fmt::Debug for ColoredCompleteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ColoredCompleteGraph(n={}, k={})", self.n, self.k)
    }
}

impl ColoredCompleteGraph {
    fn check_params(n: usize, k: Color) -> Result<()> {
        if n == 0 || n > MAX_ORDER {
            return Err(Error::Param(format!("order {n} outside 1..={MAX_ORDER}")));
        }
        if k == 0 {
            return Err(Error::Param(String::from("palette size must be at least 1")));
        }
        Ok(())
    }

    /// `K_n` with every edge colored `c`.
    pub fn new_uniform(n: usize, k: Color, c: Color) -> Result<Self> {
        Self::check_params(n, k)?;
        if c == 0 || c > k {
            return Err(Error::Palette { color: c, palette: k });
        }
        let m = n * (n - 1) / 2;
        Ok(Self { n, k, colors: vec![c; m].into_boxed_slice() })
    }

    /// Builder with all edges unassigned.
    pub fn builder(n: usize, k: Color) -> Result<GraphBuilder> {
        Self::check_params(n, k)?;
        let m = n * (n - 1) / 2;
        Ok(GraphBuilder { n, k, colors: vec![0; m] })
    }

    /// `K_n` colored by a function of the (ordered) endpoint pair.
    ///
    /// `f(u, v)` is called once per edge with `u < v` and must return a
    /// color in `1..=k`.
    pub fn from_fn(n: usize, k: Color, mut f: impl FnMut(usize, usize) -> Color) -> Result<Self> {
        Self::check_params(n, k)?;
        let mut colors = Vec::with_capacity(n * (n - 1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                let c = f(u, v);
                if c == 0 || c > k {
                    return Err(Error::Palette { color: c, palette: k });
                }
                colors.push(c);
            }
        }
        Ok(Self { n, k, colors: colors.into_boxed_slice() })
    }

    /// Number of vertices.
    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Palette size; valid colors are `1..=palette()`.
    #[inline]
    pub fn palette(&self) -> Color {
        self.k
    }

    /// Number of edges, `n(n-1)/2`.
    #[inline]
    pub fn edge_count(&self) -> usize {
        self.colors.len()
    }

    /// Color of edge `{u, v}`.
    ///
    /// Panics on a self-loop or out-of-range endpoint; use [`try_color`]
    /// for checked access.
    ///
    /// [`try_color`]: Self::try_color
    #[inline]
    pub fn color(&self, u: usize, v: usize) -> Color {
        assert!(u != v, "self-loop at vertex {u}");
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.colors[edge_index(self.n, a, b)]
    }

    /// Checked variant of [`color`](Self::color).
    pub fn try_color(&self, u: usize, v: usize) -> Result<Color> {
        let (a, b) = check_endpoints(self.n, u, v)?;
        Ok(self.colors[edge_index(self.n, a, b)])
    }

    /// Raw row-major color storage; index with [`flat_index`](Self::flat_index).
    #[inline]
    pub(crate) fn raw_colors(&self) -> &[Color] {
        &self.colors
    }

    /// Flat index of edge `(u, v)`; requires `u < v < n`.
    #[inline]
    pub(crate) fn flat_index(&self, u: usize, v: usize) -> usize {
        edge_index(self.n, u, v)
    }

    /// Edges in row-major order with their colors.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Color)> + '_ {
        let n = self.n;
        (0..n)
            .flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
            .zip(self.colors.iter())
            .map(|((u, v), &c)| (u, v, c))
    }

    /// Distinct colors that appear on at least one edge, ascending.
    pub fn colors_present(&self) -> Vec<Color> {
        let mut seen = [false; 256];
        for &c in self.colors.iter() {
            seen[c as usize] = true;
        }
        (1..=self.k).filter(|&c| seen[c as usize]).collect()
    }

    /// Edges carrying color `c`, in lexicographic order.
    pub fn edges_of_color(&self, c: Color) -> EdgeList {
        let pairs: Vec<(usize, usize)> =
            self.edges().filter(|&(_, _, ec)| ec == c).map(|(u, v, _)| (u, v)).collect();
        EdgeList { pairs }
    }

    /// Relabel vertices: in the result, edge `{perm[u], perm[v]}` has the
    /// color of `{u, v}`. `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n;
        if perm.len() != n {
            return Err(Error::Param(format!("permutation length {} for order {n}", perm.len())));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n {
                return Err(Error::Index { v: p, n });
            }
            if seen[p] {
                return Err(Error::Param(format!("vertex {p} repeated in permutation")));
            }
            seen[p] = true;
        }
        let mut out = vec![0u8; self.colors.len()];
        for (u, v, c) in self.edges() {
            let (a, b) = if perm[u] < perm[v] { (perm[u], perm[v]) } else { (perm[v], perm[u]) };
            out[edge_index(n, a, b)] = c;
        }
        Ok(Self { n, k: self.k, colors: out.into_boxed_slice() })
    }

    /// Rename colors: color `c` becomes `perm[c - 1]`. `perm` must be a
    /// permutation of `1..=k`.
    pub fn permute_palette(&self, perm: &[Color]) -> Result<Self> {
        let k = self.k;
        if perm.len() != k as usize {
            return Err(Error::Param(format!(
                "palette permutation length {} for palette {k}",
                perm.len()
            )));
        }
        let mut seen = [false; 256];
        for &p in perm {
            if p == 0 || p > k {
                return Err(Error::Palette { color: p, palette: k });
            }
            if seen[p as usize] {
                return Err(Error::Param(format!("color {p} repeated in permutation")));
            }
            seen[p as usize] = true;
        }
        let colors: Vec<Color> = self.colors.iter().map(|&c| perm[c as usize - 1]).collect();
        Ok(Self { n: self.n, k, colors: colors.into_boxed_slice() })
    }

    /// Parse the `.gcg` text format.
    ///
    /// Layout: a first line `gcg 1`, a header `n k`, then `n(n-1)/2`
    /// whitespace-separated color entries in row-major upper-triangular
    /// order. Line breaks in the body are not significant.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.splitn(2, '\n');
        let magic = lines.next().unwrap_or("").trim_end_matches('\r');
        if magic.trim() != "gcg 1" {
            return Err(Error::Format(String::from("missing `gcg 1` magic line")));
        }
        let body = lines.next().unwrap_or("");
        let mut tok = body.split_whitespace();
        let n: usize = tok
            .next()
            .ok_or_else(|| Error::Format(String::from("missing order")))?
            .parse()
            .map_err(|_| Error::Format(String::from("order is not an integer")))?;
        let k: u32 = tok
            .next()
            .ok_or_else(|| Error::Format(String::from("missing palette size")))?
            .parse()
            .map_err(|_| Error::Format(String::from("palette size is not an integer")))?;
        if n == 0 || n > MAX_ORDER {
            return Err(Error::Format(format!("order {n} outside 1..={MAX_ORDER}")));
        }
        if k == 0 || k > 255 {
            return Err(Error::Format(format!("palette size {k} outside 1..=255")));
        }
        let k = k as Color;
        let expected = n * (n - 1) / 2;
        let entries: Vec<&str> = tok.collect();
        if entries.len() != expected {
            return Err(Error::Length { expected, got: entries.len() });
        }
        let mut colors = Vec::with_capacity(expected);
        for t in entries {
            let c: u32 =
                t.parse().map_err(|_| Error::Format(format!("entry `{t}` is not an integer")))?;
            if c == 0 || c > k as u32 {
                return Err(Error::Palette { color: c.min(255) as Color, palette: k });
            }
            colors.push(c as Color);
        }
        Ok(Self { n, k, colors: colors.into_boxed_slice() })
    }

    /// Serialize to `.gcg` text: header lines, then one row of the upper
    /// triangle per line. [`parse`](Self::parse) round-trips this exactly.
    pub fn serialize(&self) -> String {
        use core::fmt::Write;
        let n = self.n;
        let mut out = format!("gcg 1\n{} {}\n", n, self.k);
        let mut idx = 0;
        for u in 0..n.saturating_sub(1) {
            for v in u + 1..n {
                let _ = write!(out, "{}", self.colors[idx]);
                idx += 1;
                out.push(if v + 1 == n { '\n' } else { ' ' });
            }
        }
        out
    }
}

/// Mutable staging area for a [`ColoredCompleteGraph`].
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    n: usize,
    k: Color,
    colors: Vec<Color>,
}

impl GraphBuilder {
    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn palette(&self) -> Color {
        self.k
    }

    /// Color edge `{u, v}` (either endpoint order), overwriting any
    /// previous assignment.
    pub fn set_color(&mut self, u: usize, v: usize, c: Color) -> Result<()> {
        let (a, b) = check_endpoints(self.n, u, v)?;
        if c == 0 || c > self.k {
            return Err(Error::Palette { color: c, palette: self.k });
        }
        self.colors[edge_index(self.n, a, b)] = c;
        Ok(())
    }

    /// Current color of `{u, v}`, or `None` while unassigned.
    pub fn get_color(&self, u: usize, v: usize) -> Result<Option<Color>> {
        let (a, b) = check_endpoints(self.n, u, v)?;
        let c = self.colors[edge_index(self.n, a, b)];
        Ok(if c == 0 { None } else { Some(c) })
    }

    /// Freeze into an immutable graph. Every edge must be assigned.
    pub fn finish(self) -> Result<ColoredCompleteGraph> {
        if let Some(pos) = self.colors.iter().position(|&c| c == 0) {
            let (mut u, mut rem) = (0, pos);
            while rem >= self.n - u - 1 {
                rem -= self.n - u - 1;
                u += 1;
            }
            let v = u + 1 + rem;
            return Err(Error::Param(format!("edge ({u}, {v}) left unassigned")));
        }
        Ok(ColoredCompleteGraph { n: self.n, k: self.k, colors: self.colors.into_boxed_slice() })
    }
}

/// A set of edges as unordered endpoint pairs.
///
/// Stored with the smaller endpoint first, sorted lexicographically,
/// without duplicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeList {
    pairs: Vec<(usize, usize)>,
}

impl EdgeList {
    /// Normalize, sort and validate a pair list.
    pub fn new(mut pairs: Vec<(usize, usize)>) -> Result<Self> {
        for p in pairs.iter_mut() {
            if p.0 == p.1 {
                return Err(Error::SelfLoop { v: p.0 });
            }
            if p.0 > p.1 {
                *p = (p.1, p.0);
            }
        }
        pairs.sort_unstable();
        if let Some(w) = pairs.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Param(format!("duplicate edge ({}, {})", w[0].0, w[0].1)));
        }
        Ok(Self { pairs })
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Distinct endpoints, ascending.
    pub fn vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, k: Color) -> ColoredCompleteGraph {
        ColoredCompleteGraph::from_fn(n, k, |_, _| rng.gen_range(1..=k)).unwrap()
    }

    #[test]
    fn edge_index_is_row_major_bijection() {
        let n = 9;
        let mut expect = 0;
        for u in 0..n {
            for v in u + 1..n {
                assert_eq!(edge_index(n, u, v), expect);
                expect += 1;
            }
        }
        assert_eq!(expect, n * (n - 1) / 2);
    }

    #[test]
    fn uniform_and_queries() {
        let g = ColoredCompleteGraph::new_uniform(5, 3, 2).unwrap();
        assert_eq!(g.order(), 5);
        assert_eq!(g.palette(), 3);
        assert_eq!(g.edge_count(), 10);
        assert_eq!(g.color(3, 1), 2);
        assert_eq!(g.try_color(1, 3).unwrap(), 2);
        assert_eq!(g.colors_present(), vec![2]);
        assert!(matches!(g.try_color(2, 2), Err(Error::SelfLoop { v: 2 })));
        assert!(matches!(g.try_color(0, 5), Err(Error::Index { v: 5, n: 5 })));
        assert!(matches!(
            ColoredCompleteGraph::new_uniform(5, 3, 4),
            Err(Error::Palette { color: 4, palette: 3 })
        ));
        assert!(ColoredCompleteGraph::new_uniform(0, 3, 1).is_err());
        assert!(ColoredCompleteGraph::new_uniform(3, 0, 1).is_err());
    }

    #[test]
    fn builder_tracks_assignments() {
        let mut b = ColoredCompleteGraph::builder(3, 2).unwrap();
        b.set_color(1, 0, 2).unwrap();
        assert_eq!(b.get_color(0, 1).unwrap(), Some(2));
        assert_eq!(b.get_color(0, 2).unwrap(), None);
        let err = b.clone().finish().unwrap_err();
        assert!(matches!(err, Error::Param(ref m) if m.contains("(0, 2)")));
        b.set_color(0, 2, 1).unwrap();
        b.set_color(1, 2, 1).unwrap();
        let g = b.finish().unwrap();
        assert_eq!(g.color(0, 1), 2);
        assert_eq!(g.color(0, 2), 1);
        assert!(matches!(
            ColoredCompleteGraph::builder(3, 2).unwrap().set_color(0, 1, 3),
            Err(Error::Palette { color: 3, palette: 2 })
        ));
    }

    #[test]
    fn parse_serialize_round_trip() {
        let text = "gcg 1\n3 2\n1 2 1\n";
        let g = ColoredCompleteGraph::parse(text).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.palette(), 2);
        assert_eq!(g.color(0, 1), 1);
        assert_eq!(g.color(0, 2), 2);
        assert_eq!(g.color(1, 2), 1);
        let canon = g.serialize();
        assert_eq!(canon, "gcg 1\n3 2\n1 2\n1\n");
        assert_eq!(ColoredCompleteGraph::parse(&canon).unwrap(), g);
    }

    #[test]
    fn parse_accepts_any_body_whitespace() {
        let g = ColoredCompleteGraph::parse("gcg 1\n3 2 1\n2\t 1").unwrap();
        assert_eq!(g.color(1, 2), 1);
        let one = ColoredCompleteGraph::parse("gcg 1\n1 7\n").unwrap();
        assert_eq!(one.order(), 1);
        assert_eq!(one.serialize(), "gcg 1\n1 7\n");
    }

    #[test]
    fn parse_rejects_malformed_input() {
        assert!(matches!(
            ColoredCompleteGraph::parse("gcg 2\n3 2\n1 1 1\n"),
            Err(Error::Format(_))
        ));
        assert!(matches!(ColoredCompleteGraph::parse(""), Err(Error::Format(_))));
        assert!(matches!(ColoredCompleteGraph::parse("gcg 1\n3\n"), Err(Error::Format(_))));
        assert!(matches!(ColoredCompleteGraph::parse("gcg 1\nx 2\n1 1 1"), Err(Error::Format(_))));
        assert!(matches!(
            ColoredCompleteGraph::parse("gcg 1\n3 2\n1 1\n"),
            Err(Error::Length { expected: 3, got: 2 })
        ));
        assert!(matches!(
            ColoredCompleteGraph::parse("gcg 1\n3 2\n1 1 1 1\n"),
            Err(Error::Length { expected: 3, got: 4 })
        ));
        assert!(matches!(
            ColoredCompleteGraph::parse("gcg 1\n3 2\n1 3 1\n"),
            Err(Error::Palette { color: 3, palette: 2 })
        ));
        assert!(matches!(
            ColoredCompleteGraph::parse("gcg 1\n3 2\n1 0 1\n"),
            Err(Error::Palette { color: 0, palette: 2 })
        ));
        assert!(matches!(ColoredCompleteGraph::parse("gcg 1\n0 2\n"), Err(Error::Format(_))));
        assert!(matches!(ColoredCompleteGraph::parse("gcg 1\n3 300\n1 1 1"), Err(Error::Format(_))));
    }

    #[test]
    fn random_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let n = rng.gen_range(1..=20);
            let k = rng.gen_range(1..=9);
            let g = random_graph(&mut rng, n, k);
            assert_eq!(ColoredCompleteGraph::parse(&g.serialize()).unwrap(), g);
        }
    }

    #[test]
    fn relabel_preserves_colors() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..30 {
            let n = rng.gen_range(2..=12);
            let g = random_graph(&mut rng, n, 4);
            let mut perm: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                perm.swap(i, rng.gen_range(0..=i));
            }
            let h = g.relabel(&perm).unwrap();
            for (u, v, c) in g.edges() {
                assert_eq!(h.color(perm[u], perm[v]), c);
            }
        }
        let g = random_graph(&mut rng, 4, 2);
        assert!(g.relabel(&[0, 1, 2]).is_err());
        assert!(g.relabel(&[0, 1, 2, 2]).is_err());
        assert!(g.relabel(&[0, 1, 2, 4]).is_err());
    }

    #[test]
    fn palette_permutation_is_bijective_on_colors() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let g = random_graph(&mut rng, 8, 3);
        let h = g.permute_palette(&[3, 1, 2]).unwrap();
        for (u, v, c) in g.edges() {
            assert_eq!(h.color(u, v), [3, 1, 2][c as usize - 1]);
        }
        assert!(g.permute_palette(&[1, 2]).is_err());
        assert!(g.permute_palette(&[1, 1, 2]).is_err());
        assert!(g.permute_palette(&[1, 2, 4]).is_err());
    }

    #[test]
    fn edge_list_normalizes() {
        let e = EdgeList::new(vec![(4, 1), (0, 2), (1, 4)]);
        assert!(matches!(e, Err(Error::Param(_))));
        let e = EdgeList::new(vec![(4, 1), (0, 2)]).unwrap();
        assert_eq!(e.edges(), &[(0, 2), (1, 4)]);
        assert_eq!(e.vertices(), vec![0, 1, 2, 4]);
        assert!(EdgeList::new(vec![(3, 3)]).is_err());
    }

    #[test]
    fn edges_of_color_is_lex_sorted() {
        let g = ColoredCompleteGraph::parse("gcg 1\n4 2\n1 2 1 2 1 2\n").unwrap();
        assert_eq!(g.edges_of_color(1).edges(), &[(0, 1), (0, 3), (1, 3)]);
        assert_eq!(g.edges_of_color(2).edges(), &[(0, 2), (1, 2), (2, 3)]);
    }
}
