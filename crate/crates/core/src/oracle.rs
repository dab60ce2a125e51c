//! Exact exhaustive search for longest paths, longest cycles and Hamilton
//! cycles.
//!
//! Every search is a depth-first backtrack over simple paths with a bitset
//! visited mask, pruned by the size of the component still reachable from
//! the current end. For `n ≥ 9` a memo of fully explored `(visited, end)`
//! states is kept as well; the future of a partial path depends only on that
//! pair, so a revisit can never improve the result.
//!
//! Neighbours are always tried in ascending index order, so witnesses and
//! enumeration order are reproducible.

use std::collections::HashSet;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{bits, Graph};

const NO_POS: u8 = u8::MAX;
const MEMO_MIN_ORDER: usize = 9;
const DENSE_MEMO_MAX_ORDER: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WalkError {
    #[error("empty vertex sequence")]
    Empty,
    #[error("vertex {0} is not in the host graph")]
    OutOfRange(usize),
    #[error("vertex {0} appears more than once")]
    Duplicate(usize),
    #[error("consecutive vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("a cycle needs at least three vertices, got {0}")]
    TooShort(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("search budget of {budget} paths exhausted after {partial} paths")]
    ResourceLimit { budget: u64, partial: u64 },
}

fn check_walk(g: &Graph, vertices: &[usize], closed: bool) -> Result<(), WalkError> {
    if vertices.is_empty() {
        return Err(WalkError::Empty);
    }
    let mut seen = 0u64;
    for &v in vertices {
        if v >= g.order() {
            return Err(WalkError::OutOfRange(v));
        }
        if seen >> v & 1 == 1 {
            return Err(WalkError::Duplicate(v));
        }
        seen |= 1 << v;
    }
    for w in vertices.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return Err(WalkError::NotAdjacent(w[0], w[1]));
        }
    }
    if closed {
        if vertices.len() < 3 {
            return Err(WalkError::TooShort(vertices.len()));
        }
        let (first, last) = (vertices[0], vertices[vertices.len() - 1]);
        if !g.has_edge(last, first) {
            return Err(WalkError::NotAdjacent(last, first));
        }
    }
    Ok(())
}

/// A simple path `v₁ v₂ … v_p` with a direction given by vertex order.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct OrientedPath {
    vertices: Vec<usize>,
    pos: [u8; 64],
}

impl std::fmt::Debug for OrientedPath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_tuple("OrientedPath").field(&self.vertices).finish()
    }
}

impl From<OrientedPath> for Vec<usize> {
    fn from(p: OrientedPath) -> Self {
        p.vertices
    }
}

impl TryFrom<Vec<usize>> for OrientedPath {
    type Error = WalkError;

    /// Structural checks only (no host graph): non-empty, in range, distinct.
    fn try_from(vertices: Vec<usize>) -> Result<Self, WalkError> {
        if vertices.is_empty() {
            return Err(WalkError::Empty);
        }
        let mut pos = [NO_POS; 64];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= 64 {
                return Err(WalkError::OutOfRange(v));
            }
            if pos[v] != NO_POS {
                return Err(WalkError::Duplicate(v));
            }
            pos[v] = i as u8;
        }
        Ok(Self { vertices, pos })
    }
}

impl OrientedPath {
    /// Validates `vertices` as a path in `g`.
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Self, WalkError> {
        check_walk(g, &vertices, false)?;
        Self::try_from(vertices)
    }

    /// Re-checks adjacency against `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), WalkError> {
        check_walk(g, &self.vertices, false)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn first(&self) -> usize {
        self.vertices[0]
    }

    pub fn last(&self) -> usize {
        self.vertices[self.vertices.len() - 1]
    }

    pub fn at(&self, position: usize) -> usize {
        self.vertices[position]
    }

    /// 0-based position of `v` along the path.
    pub fn position(&self, v: usize) -> Option<usize> {
        match self.pos.get(v) {
            Some(&p) if p != NO_POS => Some(p as usize),
            _ => None,
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.position(v).is_some()
    }

    pub fn mask(&self) -> u64 {
        self.vertices.iter().fold(0, |m, &v| m | 1 << v)
    }

    /// `v⁺`.
    pub fn successor(&self, v: usize) -> Option<usize> {
        self.position(v)
            .and_then(|i| self.vertices.get(i + 1).copied())
    }

    /// `v⁻`.
    pub fn predecessor(&self, v: usize) -> Option<usize> {
        self.position(v)
            .and_then(|i| i.checked_sub(1))
            .map(|i| self.vertices[i])
    }

    /// `a ≺ b`: both on the path and `a` occurs strictly before `b`.
    pub fn precedes(&self, a: usize, b: usize) -> bool {
        matches!((self.position(a), self.position(b)), (Some(i), Some(j)) if i < j)
    }

    /// Vertices between positions `from` and `to` inclusive, walking in
    /// whichever direction leads from `from` to `to`.
    pub fn segment(&self, from: usize, to: usize) -> Vec<usize> {
        if from <= to {
            self.vertices[from..=to].to_vec()
        } else {
            self.vertices[to..=from].iter().rev().copied().collect()
        }
    }

    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Self::try_from(vertices).expect("reversal keeps vertices distinct")
    }

    /// `x⁻ ←P v₁ x →P v_p` for a chord `v₁x`; the result starts at `x⁻` and
    /// keeps the same vertex set.
    pub fn rotate_at_front(&self, x: usize) -> Option<Self> {
        let i = self.position(x).filter(|&i| i >= 1)?;
        let mut vertices = self.segment(i - 1, 0);
        vertices.extend_from_slice(&self.vertices[i..]);
        Self::try_from(vertices).ok()
    }

    /// `y⁺ →P v_p y ←P v₁` for a chord `v_p y`; the result starts at `y⁺`.
    pub fn rotate_at_back(&self, y: usize) -> Option<Self> {
        let j = self.position(y).filter(|&j| j + 1 < self.order())?;
        let mut vertices = self.vertices[j + 1..].to_vec();
        vertices.extend(self.segment(j, 0));
        Self::try_from(vertices).ok()
    }
}

/// A cycle given as a cyclic vertex sequence; the last vertex is adjacent to
/// the first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleWitness {
    vertices: Vec<usize>,
}

impl CycleWitness {
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Self, WalkError> {
        check_walk(g, &vertices, true)?;
        Ok(Self { vertices })
    }

    pub fn validate(&self, g: &Graph) -> Result<(), WalkError> {
        check_walk(g, &self.vertices, true)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn mask(&self) -> u64 {
        self.vertices.iter().fold(0, |m, &v| m | 1 << v)
    }
}

/// Memo of `(visited, end)` states already explored (or proven dead).
enum StateMemo {
    Off,
    Dense { n: usize, words: Vec<u64> },
    Sparse(HashSet<(u64, u8)>),
}

impl StateMemo {
    fn for_order(n: usize) -> Self {
        if n < MEMO_MIN_ORDER {
            StateMemo::Off
        } else if n <= DENSE_MEMO_MAX_ORDER {
            StateMemo::Dense {
                n,
                words: vec![0; ((n << n) >> 6) + 1],
            }
        } else {
            StateMemo::Sparse(HashSet::new())
        }
    }

    fn contains(&self, visited: u64, end: usize) -> bool {
        match self {
            StateMemo::Off => false,
            StateMemo::Dense { n, words } => {
                let idx = visited as usize * n + end;
                words[idx >> 6] >> (idx & 63) & 1 == 1
            }
            StateMemo::Sparse(set) => set.contains(&(visited, end as u8)),
        }
    }

    fn insert(&mut self, visited: u64, end: usize) {
        match self {
            StateMemo::Off => {}
            StateMemo::Dense { n, words } => {
                let idx = visited as usize * *n + end;
                words[idx >> 6] |= 1 << (idx & 63);
            }
            StateMemo::Sparse(set) => {
                set.insert((visited, end as u8));
            }
        }
    }

    fn clear(&mut self) {
        match self {
            StateMemo::Off => {}
            StateMemo::Dense { words, .. } => words.iter_mut().for_each(|w| *w = 0),
            StateMemo::Sparse(set) => set.clear(),
        }
    }
}

/// Order of the largest connected component.
fn largest_component(g: &Graph) -> usize {
    let mut left = g.vertex_mask();
    let mut best = 0;
    while left != 0 {
        let v = left.trailing_zeros() as usize;
        let comp = g.component_within(v, left);
        best = best.max(comp.count_ones() as usize);
        left &= !comp;
    }
    best
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LongestPath {
    /// `p`, the number of vertices on a longest path.
    pub order: usize,
    pub witness: OrientedPath,
}

struct LongestPathSearch<'g> {
    g: &'g Graph,
    stack: Vec<usize>,
    best: Vec<usize>,
    target: usize,
    memo: StateMemo,
}

impl LongestPathSearch<'_> {
    fn dfs(&mut self, end: usize, visited: u64) -> bool {
        if self.stack.len() > self.best.len() {
            self.best.clone_from(&self.stack);
            if self.best.len() == self.target {
                return true;
            }
        }
        let free = self.g.vertex_mask() & !visited;
        let reach = self.g.component_within(end, free | 1 << end).count_ones() as usize;
        if self.stack.len() + reach - 1 <= self.best.len() || self.memo.contains(visited, end) {
            return false;
        }
        self.memo.insert(visited, end);
        for u in bits(self.g.neighbors(end) & free) {
            self.stack.push(u);
            let done = self.dfs(u, visited | 1 << u);
            self.stack.pop();
            if done {
                return true;
            }
        }
        false
    }
}

/// A longest path and its order `p`; `None` for the empty graph.
pub fn longest_path(g: &Graph) -> Option<LongestPath> {
    if g.order() == 0 {
        return None;
    }
    let mut search = LongestPathSearch {
        g,
        stack: Vec::with_capacity(g.order()),
        best: Vec::new(),
        target: largest_component(g),
        memo: StateMemo::for_order(g.order()),
    };
    for s in 0..g.order() {
        search.stack.clear();
        search.stack.push(s);
        if search.dfs(s, 1 << s) {
            break;
        }
    }
    let witness = OrientedPath::new(g, search.best).expect("search only extends along edges");
    Some(LongestPath {
        order: witness.order(),
        witness,
    })
}

/// Longest cycle, or `Acyclic` (circumference 0) for forests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Circumference {
    Acyclic,
    Cycle(CycleWitness),
}

impl Circumference {
    pub fn order(&self) -> usize {
        match self {
            Circumference::Acyclic => 0,
            Circumference::Cycle(c) => c.order(),
        }
    }

    pub fn witness(&self) -> Option<&CycleWitness> {
        match self {
            Circumference::Acyclic => None,
            Circumference::Cycle(c) => Some(c),
        }
    }
}

struct CycleSearch<'g> {
    g: &'g Graph,
    start: usize,
    allowed: u64,
    stack: Vec<usize>,
    best: Vec<usize>,
    target: usize,
    memo: StateMemo,
}

impl CycleSearch<'_> {
    fn dfs(&mut self, end: usize, visited: u64) -> bool {
        let len = self.stack.len();
        if len >= 3 && len > self.best.len() && self.g.has_edge(end, self.start) {
            self.best.clone_from(&self.stack);
            if len == self.target {
                return true;
            }
        }
        let free = self.allowed & !visited;
        let reach = self.g.component_within(end, free | 1 << end);
        if len + reach.count_ones() as usize - 1 <= self.best.len()
            || self.g.neighbors(self.start) & reach == 0
            || self.memo.contains(visited, end)
        {
            return false;
        }
        self.memo.insert(visited, end);
        for u in bits(self.g.neighbors(end) & free) {
            self.stack.push(u);
            let done = self.dfs(u, visited | 1 << u);
            self.stack.pop();
            if done {
                return true;
            }
        }
        false
    }
}

/// Exact circumference `c` with a witness cycle.
pub fn circumference(g: &Graph) -> Circumference {
    let n = g.order();
    let mut search = CycleSearch {
        g,
        start: 0,
        allowed: 0,
        stack: Vec::with_capacity(n),
        best: Vec::new(),
        target: largest_component(g),
        memo: StateMemo::for_order(n),
    };
    // Each cycle is found from its smallest vertex.
    for s in 0..n {
        if n - s <= search.best.len() {
            break;
        }
        search.start = s;
        search.allowed = g.vertex_mask() & !((2u64 << s) - 1);
        search.stack.clear();
        search.stack.push(s);
        search.memo.clear();
        if search.dfs(s, 1 << s) {
            break;
        }
    }
    if search.best.is_empty() {
        Circumference::Acyclic
    } else {
        Circumference::Cycle(CycleWitness::new(g, search.best).expect("search follows edges"))
    }
}

struct HamiltonSearch<'g> {
    g: &'g Graph,
    stack: Vec<usize>,
    memo: StateMemo,
}

impl HamiltonSearch<'_> {
    fn dfs(&mut self, end: usize, visited: u64) -> bool {
        let all = self.g.vertex_mask();
        if visited == all {
            return self.g.has_edge(end, 0);
        }
        let free = all & !visited;
        // Every unvisited vertex must still be reachable, and must keep at
        // least two usable neighbours among the unvisited vertices plus the
        // two path ends.
        if self.g.component_within(end, free | 1 << end) != free | 1 << end
            || self.memo.contains(visited, end)
        {
            return false;
        }
        let usable = free | 1 << end | 1;
        if bits(free).any(|v| (self.g.neighbors(v) & usable).count_ones() < 2) {
            return false;
        }
        self.memo.insert(visited, end);
        for u in bits(self.g.neighbors(end) & free) {
            self.stack.push(u);
            if self.dfs(u, visited | 1 << u) {
                return true;
            }
            self.stack.pop();
        }
        false
    }
}

/// A Hamilton cycle if one exists. Graphs with fewer than three vertices are
/// never Hamiltonian.
pub fn hamiltonian_cycle(g: &Graph) -> Option<CycleWitness> {
    if g.order() < 3 {
        return None;
    }
    let mut search = HamiltonSearch {
        g,
        stack: vec![0],
        memo: StateMemo::for_order(g.order()),
    };
    if search.dfs(0, 1) {
        Some(CycleWitness::new(g, search.stack).expect("search follows edges"))
    } else {
        None
    }
}

pub fn is_hamiltonian(g: &Graph) -> bool {
    hamiltonian_cycle(g).is_some()
}

/// Cap on the number of paths an enumeration may produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathBudget {
    pub max_paths: u64,
}

impl Default for PathBudget {
    fn default() -> Self {
        Self {
            max_paths: 20_000_000,
        }
    }
}

/// Depth-first enumeration of every oriented path of a fixed order.
pub struct PathEnumerator<'g> {
    g: &'g Graph,
    order: usize,
    budget: PathBudget,
    yielded: u64,
    stack: Vec<usize>,
    dead: StateMemo,
}

enum Step {
    Continue { completed: bool },
    Stop,
    OutOfBudget,
}

impl<'g> PathEnumerator<'g> {
    pub fn new(g: &'g Graph, order: usize, budget: PathBudget) -> Self {
        Self {
            g,
            order,
            budget,
            yielded: 0,
            stack: Vec::with_capacity(order),
            dead: StateMemo::for_order(g.order()),
        }
    }

    /// Paths reported so far.
    pub fn yielded(&self) -> u64 {
        self.yielded
    }

    /// Visits every path of the target order starting at `start`, in
    /// lexicographic order. Returns `Ok(true)` if the visitor asked to stop.
    pub fn run_from(
        &mut self,
        start: usize,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> Result<bool, OracleError> {
        self.stack.clear();
        self.stack.push(start);
        match self.dfs(start, 1 << start, visit) {
            Step::Continue { .. } => Ok(false),
            Step::Stop => Ok(true),
            Step::OutOfBudget => Err(OracleError::ResourceLimit {
                budget: self.budget.max_paths,
                partial: self.yielded,
            }),
        }
    }

    fn dfs(
        &mut self,
        end: usize,
        visited: u64,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> Step {
        let len = self.stack.len();
        if len == self.order {
            if self.yielded >= self.budget.max_paths {
                return Step::OutOfBudget;
            }
            self.yielded += 1;
            return match visit(&self.stack) {
                ControlFlow::Continue(()) => Step::Continue { completed: true },
                ControlFlow::Break(()) => Step::Stop,
            };
        }
        let free = self.g.vertex_mask() & !visited;
        let reach = self.g.component_within(end, free | 1 << end).count_ones() as usize;
        if len + reach - 1 < self.order || self.dead.contains(visited, end) {
            return Step::Continue { completed: false };
        }
        let mut completed = false;
        for u in bits(self.g.neighbors(end) & free) {
            self.stack.push(u);
            let step = self.dfs(u, visited | 1 << u, visit);
            self.stack.pop();
            match step {
                Step::Continue { completed: c } => completed |= c,
                other => return other,
            }
        }
        if !completed {
            self.dead.insert(visited, end);
        }
        Step::Continue { completed }
    }
}

/// Every oriented longest path (both directions of each path), in
/// lexicographic order.
pub fn enumerate_longest_paths(
    g: &Graph,
    budget: PathBudget,
) -> Result<Vec<OrientedPath>, OracleError> {
    let Some(lp) = longest_path(g) else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    let mut en = PathEnumerator::new(g, lp.order, budget);
    for s in 0..g.order() {
        en.run_from(s, &mut |vs| {
            out.push(OrientedPath::try_from(vs.to_vec()).expect("enumerated paths are simple"));
            ControlFlow::Continue(())
        })?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bowtie() -> Graph {
        Graph::new(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]).unwrap()
    }

    fn e1_delta2() -> Graph {
        let inner = Graph::empty(2)
            .unwrap()
            .disjoint_union(&Graph::complete(2).unwrap())
            .unwrap();
        Graph::complete(2).unwrap().join(&inner).unwrap()
    }

    fn e2_delta2() -> Graph {
        Graph::complete(2)
            .unwrap()
            .join(&Graph::empty(3).unwrap())
            .unwrap()
    }

    #[test]
    fn longest_path_examples() {
        assert_eq!(longest_path(&bowtie()).unwrap().order, 5);
        assert_eq!(longest_path(&e1_delta2()).unwrap().order, 6);
        assert_eq!(longest_path(&Graph::empty(1).unwrap()).unwrap().order, 1);
        assert!(longest_path(&Graph::empty(0).unwrap()).is_none());
        assert_eq!(longest_path(&Graph::empty(4).unwrap()).unwrap().order, 1);
    }

    #[test]
    fn circumference_examples() {
        assert_eq!(circumference(&e2_delta2()).order(), 4);
        assert_eq!(circumference(&bowtie()).order(), 3);
        assert_eq!(
            circumference(&Graph::path(4).unwrap()),
            Circumference::Acyclic
        );
        let c = circumference(&e1_delta2());
        assert_eq!(c.order(), 5);
        c.witness().unwrap().validate(&e1_delta2()).unwrap();
    }

    #[test]
    fn hamiltonicity_examples() {
        assert!(is_hamiltonian(&Graph::complete(4).unwrap()));
        assert!(!is_hamiltonian(&e2_delta2()));
        assert!(!is_hamiltonian(&Graph::complete(2).unwrap()));
        let petersen = crate::graph6::parse_graph6("IheA@GUAo").unwrap();
        assert!(!is_hamiltonian(&petersen));
        assert_eq!(circumference(&petersen).order(), 9);
        assert_eq!(longest_path(&petersen).unwrap().order, 10);
    }

    #[test]
    fn enumeration_counts() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(
            enumerate_longest_paths(&c5, PathBudget::default())
                .unwrap()
                .len(),
            10
        );
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(
            enumerate_longest_paths(&k3, PathBudget::default())
                .unwrap()
                .len(),
            6
        );
        let g = bowtie();
        let paths = enumerate_longest_paths(&g, PathBudget::default()).unwrap();
        assert!(!paths.is_empty());
        for p in &paths {
            assert_eq!(p.order(), 5);
            let side = |v: usize| if v <= 2 { 0 } else { 1 };
            assert!(p.first() != 0 && p.last() != 0);
            assert_ne!(side(p.first()), side(p.last()));
        }
    }

    #[test]
    fn enumeration_budget_reports_partial_count() {
        let k5 = Graph::complete(5).unwrap();
        let err = enumerate_longest_paths(&k5, PathBudget { max_paths: 7 }).unwrap_err();
        assert_eq!(
            err,
            OracleError::ResourceLimit {
                budget: 7,
                partial: 7
            }
        );
    }

    #[test]
    fn path_navigation_and_rotation() {
        let g = Graph::complete(5).unwrap();
        let p = OrientedPath::new(&g, vec![3, 1, 4, 0, 2]).unwrap();
        assert_eq!(p.successor(4), Some(0));
        assert_eq!(p.predecessor(3), None);
        assert!(p.precedes(1, 2) && !p.precedes(2, 1));
        assert_eq!(p.segment(3, 1), vec![0, 4, 1]);
        assert_eq!(p.rotate_at_front(0).unwrap().vertices(), &[4, 1, 3, 0, 2]);
        assert_eq!(p.rotate_at_back(1).unwrap().vertices(), &[4, 0, 2, 1, 3]);
        assert_eq!(
            OrientedPath::new(&Graph::path(3).unwrap(), vec![0, 2]),
            Err(WalkError::NotAdjacent(0, 2))
        );
        assert_eq!(
            CycleWitness::new(&g, vec![0, 1]),
            Err(WalkError::TooShort(2))
        );
    }
}
