//! Exhaustive search over 2-colorings of small complete graphs.
//!
//! The central question answered here: does every 2-coloring of `K_n`
//! contain a monochromatic fan `F_m`? [`ramsey2_decide`] explores the
//! full assignment tree with incremental fan pruning and reports either
//! `Exhausted` (no fan-free coloring exists), `Witness` (a concrete
//! fan-free coloring, returned as a certificate graph), or
//! `BudgetExceeded` when a node or time cap was hit first.
//!
//! The same kernel drives the constrained searches in [`crate::claims`]:
//! a search step may tie two edges to a single color choice, and a
//! coloring may carry fixed edges outside the searched palette.

use gfl_core::ColoredCompleteGraph;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

/// Largest vertex count the search kernel accepts.
///
/// Adjacency is kept as one `u16` bitmask per vertex per color, so the
/// kernel is limited to 16 vertices. Every search this crate performs
/// fits well inside that.
pub const MAX_SEARCH_ORDER: usize = 16;

/// How many nodes are expanded between checks of the time budget and
/// the cross-thread stop flag.
const SYNC_INTERVAL: u64 = 1024;

/// Resource cap for a search run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    max_nodes: Option<u64>,
    max_duration: Option<Duration>,
}

impl SearchBudget {
    /// No cap at all; the search runs to completion.
    pub fn unlimited() -> Self {
        SearchBudget { max_nodes: None, max_duration: None }
    }

    /// Cap on expanded nodes only.
    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget { max_nodes: Some(max_nodes), max_duration: None }
    }

    /// Cap on wall-clock time only.
    pub fn seconds(secs: u64) -> Self {
        SearchBudget { max_nodes: None, max_duration: Some(Duration::from_secs(secs)) }
    }

    /// Both caps; `None` disables that cap.
    pub fn new(max_nodes: Option<u64>, max_duration: Option<Duration>) -> Self {
        SearchBudget { max_nodes, max_duration }
    }

    pub fn max_nodes(&self) -> Option<u64> {
        self.max_nodes
    }

    pub fn max_duration(&self) -> Option<Duration> {
        self.max_duration
    }
}

/// Outcome classification of a search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// The full tree was explored and no complete coloring survived.
    Exhausted,
    /// A complete coloring surviving all constraints was found.
    Witness,
    /// The node or time cap was reached before either answer.
    BudgetExceeded,
}

impl Verdict {
    /// Stable lower-case name used in reports.
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Exhausted => "exhausted",
            Verdict::Witness => "witness",
            Verdict::BudgetExceeded => "budget_exceeded",
        }
    }
}

/// Counters describing how much work a search did.
#[derive(Debug, Clone, Copy, Default)]
pub struct SearchStats {
    /// Color assignments attempted.
    pub nodes: u64,
    /// Assignments rejected because they completed a forbidden fan.
    pub prunes: u64,
    /// Wall-clock time spent.
    pub elapsed: Duration,
}

/// Result of a search: the verdict, a witness coloring when one exists,
/// and the work counters.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub verdict: Verdict,
    pub witness: Option<ColoredCompleteGraph>,
    pub stats: SearchStats,
}

/// Order in which the kernel assigns edge colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EdgeOrder {
    /// Lexicographic by (min endpoint, max endpoint): `(0,1), (0,2),
    /// ..., (1,2), ...`. Keeps early vertices saturated so fan pruning
    /// fires early. The default.
    #[default]
    RowMajor,
    /// Bring in one vertex at a time: all edges from vertex `t` to
    /// `0..t` before any edge touching `t + 1`. Every prefix is a
    /// complete coloring of some `K_t`; measurably stronger pruning,
    /// kept behind a flag for the long stretch runs.
    VertexIncremental,
}

/// One decision point in the search: one or two edges that receive the
/// same color. `fixed` pins the choice (used to break the global
/// color-swap symmetry on the first step).
#[derive(Debug, Clone, Copy)]
pub(crate) struct Step {
    e0: (u8, u8),
    e1: Option<(u8, u8)>,
    fixed: Option<u8>,
}

/// Search kernel state: the step list plus per-color adjacency masks.
///
/// Invariant: between steps the partial coloring never contains a
/// monochromatic `F_m` in color 1 or 2. Each new assignment is checked
/// only around its own edges, which is sound because any fan created by
/// an assignment must use one of the newly colored edges as a spoke or
/// as a matching edge.
#[derive(Clone)]
struct Kernel {
    m: u32,
    n: usize,
    steps: Vec<Step>,
    assigned: Vec<u8>,
    adj: [[u16; MAX_SEARCH_ORDER]; 3],
    /// Edges colored outside the searched palette {1, 2}, e.g. a pinned
    /// third-color edge. They never enter `adj` and are only replayed
    /// when a witness graph is materialized.
    extra: Vec<(u8, u8, u8)>,
    palette: u8,
}

impl Kernel {
    fn new(m: u32, n: usize, steps: Vec<Step>, extra: Vec<(u8, u8, u8)>, palette: u8) -> Self {
        assert!(n >= 2 && n <= MAX_SEARCH_ORDER, "kernel supports 2..=16 vertices, got {n}");
        assert!(m >= 1, "fan order must be at least 1");
        let count = steps.len();
        Kernel { m, n, steps, assigned: vec![0; count], adj: [[0; MAX_SEARCH_ORDER]; 3], extra, palette }
    }

    fn assign(&mut self, pos: usize, c: u8) {
        let step = self.steps[pos];
        self.link(step.e0, c);
        if let Some(e1) = step.e1 {
            self.link(e1, c);
        }
        self.assigned[pos] = c;
    }

    fn unassign(&mut self, pos: usize) {
        let c = self.assigned[pos];
        let step = self.steps[pos];
        self.unlink(step.e0, c);
        if let Some(e1) = step.e1 {
            self.unlink(e1, c);
        }
        self.assigned[pos] = 0;
    }

    fn link(&mut self, (u, v): (u8, u8), c: u8) {
        self.adj[c as usize][u as usize] |= 1 << v;
        self.adj[c as usize][v as usize] |= 1 << u;
    }

    fn unlink(&mut self, (u, v): (u8, u8), c: u8) {
        self.adj[c as usize][u as usize] &= !(1 << v);
        self.adj[c as usize][v as usize] &= !(1 << u);
    }

    /// True when the coloring, with step `pos` just assigned color `c`,
    /// contains a monochromatic `F_m` in `c`. Only fans through the
    /// step's edges can be new, so only those are examined.
    fn step_creates_fan(&self, pos: usize, c: u8) -> bool {
        let step = self.steps[pos];
        if self.edge_creates_fan(step.e0, c) {
            return true;
        }
        match step.e1 {
            Some(e1) => self.edge_creates_fan(e1, c),
            None => false,
        }
    }

    fn edge_creates_fan(&self, (u, v): (u8, u8), c: u8) -> bool {
        let adj = &self.adj[c as usize];
        // Fan centered at an endpoint, using (u, v) as a spoke.
        if self.has_matching(adj[u as usize], c, self.m) {
            return true;
        }
        if self.has_matching(adj[v as usize], c, self.m) {
            return true;
        }
        // Fan using (u, v) as a matching edge: its center sees both ends.
        let mut common = adj[u as usize] & adj[v as usize];
        while common != 0 {
            let w = common.trailing_zeros() as usize;
            common &= common - 1;
            if self.has_matching(adj[w], c, self.m) {
                return true;
            }
        }
        false
    }

    /// Does the color-`c` graph restricted to `avail` contain a matching
    /// of `need` edges? Branches on the lowest available vertex: match it
    /// to each available neighbor, or discard it.
    fn has_matching(&self, avail: u16, c: u8, need: u32) -> bool {
        if need == 0 {
            return true;
        }
        if (avail.count_ones()) < 2 * need {
            return false;
        }
        let adj = &self.adj[c as usize];
        let mut rest = avail;
        while rest != 0 {
            let x = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let mut partners = adj[x] & rest;
            while partners != 0 {
                let y = partners.trailing_zeros() as usize;
                partners &= partners - 1;
                if self.has_matching(rest & !(1 << y), c, need - 1) {
                    return true;
                }
            }
            if rest.count_ones() < 2 * need {
                return false;
            }
        }
        false
    }

    /// Materialize the current complete assignment as a graph.
    fn to_graph(&self) -> ColoredCompleteGraph {
        let mut b = ColoredCompleteGraph::builder(self.n, self.palette)
            .expect("kernel order and palette are valid");
        for (step, &c) in self.steps.iter().zip(self.assigned.iter()) {
            b.set_color(step.e0.0 as usize, step.e0.1 as usize, c).expect("step edge in range");
            if let Some(e1) = step.e1 {
                b.set_color(e1.0 as usize, e1.1 as usize, c).expect("tied edge in range");
            }
        }
        for &(u, v, c) in &self.extra {
            b.set_color(u as usize, v as usize, c).expect("extra edge in range");
        }
        b.finish().expect("kernel steps cover every edge")
    }
}

/// Control-flow result of the recursive descent.
enum Flow {
    /// Subtree fully explored, keep going.
    Explored,
    /// A complete assignment was reached (non-counting mode).
    FoundWitness,
    /// Node or time cap hit.
    Budget,
    /// Another worker asked us to stop.
    Stopped,
}

/// Shared state for a multi-worker run.
struct Shared {
    stop: AtomicBool,
    nodes: AtomicU64,
    budget_hit: AtomicBool,
    /// Lowest prefix index that produced a witness, with its assignment.
    witness: Mutex<Option<(usize, ColoredCompleteGraph)>>,
}

struct Driver<'a> {
    kern: Kernel,
    budget: &'a SearchBudget,
    start: Instant,
    nodes: u64,
    prunes: u64,
    since_sync: u64,
    counting: bool,
    leaves: u64,
    witness: Option<ColoredCompleteGraph>,
    shared: Option<&'a Shared>,
}

impl<'a> Driver<'a> {
    fn new(kern: Kernel, budget: &'a SearchBudget, counting: bool, shared: Option<&'a Shared>) -> Self {
        Driver {
            kern,
            budget,
            start: Instant::now(),
            nodes: 0,
            prunes: 0,
            since_sync: 0,
            counting,
            leaves: 0,
            witness: None,
            shared,
        }
    }

    /// Periodic budget and stop-flag check. Returns the flow interrupt
    /// to propagate, if any.
    fn sync(&mut self) -> Option<Flow> {
        self.since_sync = 0;
        if let Some(shared) = self.shared {
            shared.nodes.fetch_add(SYNC_INTERVAL, Ordering::Relaxed);
            if shared.stop.load(Ordering::Relaxed) {
                return Some(Flow::Stopped);
            }
            if let Some(cap) = self.budget.max_nodes {
                if shared.nodes.load(Ordering::Relaxed) > cap {
                    return Some(Flow::Budget);
                }
            }
        } else if let Some(cap) = self.budget.max_nodes {
            if self.nodes > cap {
                return Some(Flow::Budget);
            }
        }
        if let Some(cap) = self.budget.max_duration {
            if self.start.elapsed() > cap {
                return Some(Flow::Budget);
            }
        }
        None
    }

    fn dfs(&mut self, pos: usize) -> Flow {
        if pos == self.kern.steps.len() {
            if self.counting {
                self.leaves += 1;
                return Flow::Explored;
            }
            self.witness = Some(self.kern.to_graph());
            return Flow::FoundWitness;
        }
        let fixed = self.kern.steps[pos].fixed;
        let colors: &[u8] = match fixed {
            Some(ref c) => core::slice::from_ref(c),
            None => &[1, 2],
        };
        for &c in colors {
            self.nodes += 1;
            self.since_sync += 1;
            if self.since_sync >= SYNC_INTERVAL {
                if let Some(interrupt) = self.sync() {
                    return interrupt;
                }
            }
            self.kern.assign(pos, c);
            if self.kern.step_creates_fan(pos, c) {
                self.prunes += 1;
                self.kern.unassign(pos);
                continue;
            }
            let flow = self.dfs(pos + 1);
            self.kern.unassign(pos);
            match flow {
                Flow::Explored => {}
                other => return other,
            }
        }
        Flow::Explored
    }

    fn stats(&self) -> SearchStats {
        SearchStats { nodes: self.nodes, prunes: self.prunes, elapsed: self.start.elapsed() }
    }
}

/// Enumerate the surviving partial assignments of the first `depth`
/// steps, for splitting work across threads. Prunes exactly like the
/// main search, so dead prefixes never reach a worker.
fn collect_prefixes(kern: &Kernel, depth: usize, prefix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if prefix.len() == depth {
        out.push(prefix.clone());
        return;
    }
    let pos = prefix.len();
    let fixed = kern.steps[pos].fixed;
    let colors: &[u8] = match fixed {
        Some(ref c) => core::slice::from_ref(c),
        None => &[1, 2],
    };
    let mut kern = kern.clone();
    for &c in colors {
        kern.assign(pos, c);
        if !kern.step_creates_fan(pos, c) {
            prefix.push(c);
            collect_prefixes(&kern, depth, prefix, out);
            prefix.pop();
        }
        kern.unassign(pos);
    }
}

/// Run the kernel to completion, sequential or split across `threads`
/// workers. A witness from the lexicographically earliest surviving
/// prefix is preferred so repeated parallel runs usually agree.
fn run_kernel(kern: Kernel, budget: &SearchBudget, threads: usize) -> SearchOutcome {
    let start = Instant::now();
    if threads <= 1 {
        let mut driver = Driver::new(kern, budget, false, None);
        let flow = driver.dfs(0);
        let verdict = match flow {
            Flow::Explored => Verdict::Exhausted,
            Flow::FoundWitness => Verdict::Witness,
            Flow::Budget | Flow::Stopped => Verdict::BudgetExceeded,
        };
        let stats = driver.stats();
        return SearchOutcome { verdict, witness: driver.witness, stats };
    }

    // Depth 4 gives at most 16 prefixes, plenty to keep a handful of
    // workers busy without fragmenting the tree.
    let depth = kern.steps.len().min(4);
    let mut prefixes = Vec::new();
    collect_prefixes(&kern, depth, &mut Vec::new(), &mut prefixes);
    if prefixes.is_empty() {
        return SearchOutcome {
            verdict: Verdict::Exhausted,
            witness: None,
            stats: SearchStats { nodes: 0, prunes: 0, elapsed: start.elapsed() },
        };
    }

    let shared = Shared {
        stop: AtomicBool::new(false),
        nodes: AtomicU64::new(0),
        budget_hit: AtomicBool::new(false),
        witness: Mutex::new(None),
    };
    let next = AtomicU64::new(0);
    let totals = Mutex::new((0u64, 0u64));
    std::thread::scope(|scope| {
        for _ in 0..threads.min(prefixes.len()) {
            scope.spawn(|| {
                let mut local_nodes = 0u64;
                let mut local_prunes = 0u64;
                loop {
                    let idx = next.fetch_add(1, Ordering::Relaxed) as usize;
                    if idx >= prefixes.len() || shared.stop.load(Ordering::Relaxed) {
                        break;
                    }
                    let mut worker = Driver::new(kern.clone(), budget, false, Some(&shared));
                    worker.start = start;
                    for (pos, &c) in prefixes[idx].iter().enumerate() {
                        worker.kern.assign(pos, c);
                    }
                    let flow = worker.dfs(prefixes[idx].len());
                    local_nodes += worker.nodes;
                    local_prunes += worker.prunes;
                    match flow {
                        Flow::FoundWitness => {
                            let graph = worker.witness.expect("witness set on FoundWitness");
                            let mut slot = shared.witness.lock().expect("witness lock");
                            let replace = match slot.as_ref() {
                                Some((best, _)) => idx < *best,
                                None => true,
                            };
                            if replace {
                                *slot = Some((idx, graph));
                            }
                            shared.stop.store(true, Ordering::Relaxed);
                        }
                        Flow::Budget => {
                            shared.budget_hit.store(true, Ordering::Relaxed);
                            shared.stop.store(true, Ordering::Relaxed);
                        }
                        Flow::Explored | Flow::Stopped => {}
                    }
                }
                let mut t = totals.lock().expect("totals lock");
                t.0 += local_nodes;
                t.1 += local_prunes;
            });
        }
    });

    let (nodes, prunes) = *totals.lock().expect("totals lock");
    let witness = shared.witness.lock().expect("witness lock").take().map(|(_, g)| g);
    let verdict = if witness.is_some() {
        Verdict::Witness
    } else if shared.budget_hit.load(Ordering::Relaxed) {
        Verdict::BudgetExceeded
    } else {
        Verdict::Exhausted
    };
    SearchOutcome { verdict, witness, stats: SearchStats { nodes, prunes, elapsed: start.elapsed() } }
}

/// Build the step list for an unconstrained 2-coloring search on `K_n`.
///
/// The first step is pinned to color 1: swapping the two colors is an
/// automorphism of the problem, so each surviving leaf stands for
/// exactly two colorings.
fn ramsey_steps(n: usize, order: EdgeOrder) -> Vec<Step> {
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    match order {
        EdgeOrder::VertexIncremental => {
            for t in 1..n {
                for u in 0..t {
                    edges.push((u as u8, t as u8));
                }
            }
        }
        EdgeOrder::RowMajor => {
            for u in 0..n {
                for v in (u + 1)..n {
                    edges.push((u as u8, v as u8));
                }
            }
        }
    }
    edges
        .into_iter()
        .enumerate()
        .map(|(i, e)| Step { e0: e, e1: None, fixed: if i == 0 { Some(1) } else { None } })
        .collect()
}

/// Decide whether every 2-coloring of `K_n` contains a monochromatic
/// fan `F_m`. `Exhausted` means yes (no fan-free coloring exists);
/// `Witness` carries a fan-free coloring of `K_n`.
///
/// Single-threaded, lexicographic edge order. See
/// [`ramsey2_decide_with`] for the tunable variant.
pub fn ramsey2_decide(m: u32, n: usize, budget: &SearchBudget) -> SearchOutcome {
    ramsey2_decide_with(m, n, budget, EdgeOrder::RowMajor, 1)
}

/// [`ramsey2_decide`] with explicit edge order and worker count.
pub fn ramsey2_decide_with(
    m: u32,
    n: usize,
    budget: &SearchBudget,
    order: EdgeOrder,
    threads: usize,
) -> SearchOutcome {
    let kern = Kernel::new(m, n, ramsey_steps(n, order), Vec::new(), 2);
    run_kernel(kern, budget, threads.max(1))
}

/// Count the fan-free 2-colorings of `K_n` with the first edge pinned
/// to color 1. Exactly half of all fan-free colorings, which gives the
/// tests an exact identity against brute-force enumeration.
pub fn ramsey2_count_canonical(m: u32, n: usize, budget: &SearchBudget) -> (u64, SearchStats, Verdict) {
    let kern = Kernel::new(m, n, ramsey_steps(n, EdgeOrder::RowMajor), Vec::new(), 2);
    let mut driver = Driver::new(kern, budget, true, None);
    let flow = driver.dfs(0);
    let verdict = match flow {
        Flow::Explored => Verdict::Exhausted,
        Flow::FoundWitness => Verdict::Witness,
        Flow::Budget | Flow::Stopped => Verdict::BudgetExceeded,
    };
    (driver.leaves, driver.stats(), verdict)
}

/// Step list for the pinned-edge searches in [`crate::claims`]: vertex
/// 0 and 1 are joined by an edge outside the searched palette, every
/// other vertex `w` gets its pair of edges to {0, 1} tied to one color,
/// and the remaining edges are free. The first tied pair is pinned to
/// color 1 to break the color-swap symmetry.
pub(crate) fn tied_pair_kernel(n: usize, pinned_color: u8) -> (Vec<Step>, Vec<(u8, u8, u8)>) {
    assert!(n >= 3 && n <= MAX_SEARCH_ORDER);
    let mut steps = Vec::new();
    for t in 2..n {
        steps.push(Step {
            e0: (0, t as u8),
            e1: Some((1, t as u8)),
            fixed: if t == 2 { Some(1) } else { None },
        });
        for u in 2..t {
            steps.push(Step { e0: (u as u8, t as u8), e1: None, fixed: None });
        }
    }
    (steps, vec![(0, 1, pinned_color)])
}

/// Run a tied-pair kernel (see [`tied_pair_kernel`]) to completion.
pub(crate) fn run_tied_pair(
    m: u32,
    n: usize,
    pinned_color: u8,
    palette: u8,
    budget: &SearchBudget,
    threads: usize,
) -> SearchOutcome {
    let (steps, extra) = tied_pair_kernel(n, pinned_color);
    let kern = Kernel::new(m, n, steps, extra, palette);
    run_kernel(kern, budget, threads.max(1))
}
