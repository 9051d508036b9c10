//! Bron-Kerbosch maximal clique enumeration with pivoting over bitset rows.

/// Fixed-width bitset over `0..len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> BitSet {
        BitSet {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn and(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn and_not(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & !b)
                .collect(),
        }
    }

    pub fn and_count(&self, other: &BitSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }
}

/// Simple undirected graph without self-loops.
#[derive(Clone, Debug)]
pub struct Graph {
    rows: Vec<BitSet>,
}

impl Graph {
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Graph {
        let mut rows = vec![BitSet::new(n); n];
        for i in 0..n {
            for j in i + 1..n {
                if adjacent(i, j) {
                    rows[i].insert(j);
                    rows[j].insert(i);
                }
            }
        }
        Graph { rows }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.rows[v]
    }

    /// Smallest-last elimination order (ties to the lower index).
    pub fn degeneracy_order(&self) -> Vec<usize> {
        let n = self.len();
        let mut degree: Vec<usize> = self.rows.iter().map(BitSet::count).collect();
        let mut removed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| !removed[v])
                .min_by_key(|&v| (degree[v], v))
                .unwrap();
            removed[v] = true;
            order.push(v);
            for w in self.rows[v].iter() {
                if !removed[w] {
                    degree[w] -= 1;
                }
            }
        }
        order
    }
}

/// Outer-loop vertex order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexOrder {
    Degeneracy,
    Ascending,
    Descending,
}

/// Calls `emit` once per maximal clique, with vertices ascending.
pub fn maximal_cliques(g: &Graph, order: VertexOrder, mut emit: impl FnMut(&[usize])) {
    let n = g.len();
    let order: Vec<usize> = match order {
        VertexOrder::Degeneracy => g.degeneracy_order(),
        VertexOrder::Ascending => (0..n).collect(),
        VertexOrder::Descending => (0..n).rev().collect(),
    };
    let mut later = BitSet::new(n);
    for v in 0..n {
        later.insert(v);
    }
    let mut earlier = BitSet::new(n);
    let mut clique = Vec::new();
    for v in order {
        later.remove(v);
        let p = g.rows[v].and(&later);
        let x = g.rows[v].and(&earlier);
        clique.push(v);
        expand(g, &mut clique, p, x, &mut emit);
        clique.pop();
        earlier.insert(v);
    }
}

fn expand(
    g: &Graph,
    clique: &mut Vec<usize>,
    mut p: BitSet,
    mut x: BitSet,
    emit: &mut impl FnMut(&[usize]),
) {
    if p.is_empty() {
        if x.is_empty() {
            let mut sorted = clique.clone();
            sorted.sort_unstable();
            emit(&sorted);
        }
        return;
    }
    // pivot maximizing |P ∩ N(u)|
    let pivot = p
        .iter()
        .chain(x.iter())
        .max_by_key(|&u| (p.and_count(&g.rows[u]), std::cmp::Reverse(u)))
        .unwrap();
    let candidates = p.and_not(&g.rows[pivot]);
    for v in candidates.iter() {
        clique.push(v);
        expand(g, clique, p.and(&g.rows[v]), x.and(&g.rows[v]), emit);
        clique.pop();
        p.remove(v);
        x.insert(v);
    }
}
