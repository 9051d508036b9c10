//! Brute-force referee. It shares no code with the library: divisors are raw
//! exponent vectors and every family is found by filtering all subsets.

#![allow(dead_code)]

pub type Exps = Vec<u32>;

/// Divisors of `N` other than 1, in odometer order.
pub fn divisors(alphas: &[u32]) -> Vec<Exps> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; alphas.len()];
    loop {
        if cur.iter().any(|&e| e > 0) {
            out.push(cur.clone());
        }
        let mut i = 0;
        loop {
            if i == alphas.len() {
                return out;
            }
            if cur[i] < alphas[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

pub fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| x == 0 || y == 0)
}

/// Every maximal pairwise non-coprime family, members and list both sorted.
pub fn maximal_nsets(alphas: &[u32]) -> Vec<Vec<Exps>> {
    let d = divisors(alphas);
    let m = d.len();
    assert!(m <= 22, "{m} divisors is too many for subset filtering");
    let adj: Vec<u32> = (0..m)
        .map(|i| {
            (0..m)
                .filter(|&j| j != i && !coprime(&d[i], &d[j]))
                .fold(0u32, |acc, j| acc | 1 << j)
        })
        .collect();
    let mut out = Vec::new();
    for s in 1u32..(1u32 << m) {
        let clique = (0..m)
            .filter(|&i| s >> i & 1 == 1)
            .all(|i| (s & !(1 << i)) & !adj[i] == 0);
        if !clique {
            continue;
        }
        let extendable = (0..m)
            .filter(|&j| s >> j & 1 == 0)
            .any(|j| s & !adj[j] == 0);
        if extendable {
            continue;
        }
        let mut fam: Vec<Exps> = (0..m)
            .filter(|&i| s >> i & 1 == 1)
            .map(|i| d[i].clone())
            .collect();
        fam.sort();
        out.push(fam);
    }
    out.sort();
    out
}

/// Families of non-empty subsets of `[k]` meeting the three antichain
/// conditions, read literally.
pub fn cover_antichains(k: usize) -> Vec<Vec<u32>> {
    assert!(k <= 4);
    let sets: Vec<u32> = (1..1u32 << k).collect();
    let mut out = Vec::new();
    for choice in 1u32..(1u32 << sets.len()) {
        let t: Vec<u32> = (0..sets.len())
            .filter(|&i| choice >> i & 1 == 1)
            .map(|i| sets[i])
            .collect();
        let intersecting = t.iter().all(|&a| t.iter().all(|&b| a & b != 0));
        let antichain = t.iter().all(|&a| t.iter().all(|&b| a == b || a & !b != 0));
        let cover = sets
            .iter()
            .all(|&x| t.iter().any(|&s| s & x == 0 || s & !x == 0));
        if intersecting && antichain && cover {
            out.push(t);
        }
    }
    out
}

/// Upward-closed families on `[k]` other than the empty family and the
/// whole power set, as sorted member lists.
pub fn up_sets(k: usize) -> Vec<Vec<u32>> {
    assert!(k <= 4);
    let n = 1u32 << k;
    let mut out = Vec::new();
    for bits in 1u64..(1u64 << n) - 1 {
        let has = |s: u32| bits >> s & 1 == 1;
        let closed = (0..n)
            .filter(|&s| has(s))
            .all(|s| (0..k).all(|i| has(s | 1 << i)));
        if closed {
            out.push((0..n).filter(|&s| has(s)).collect());
        }
    }
    out
}

/// Hall's condition for matching member `j` to a member `i` with
/// `ground \ F[i] ⊆ F[j]`, checked over every subset of members.
pub fn complement_matching_exists(k: usize, family: &[u32]) -> bool {
    let ground = (1u32 << k) - 1;
    let s = family.len();
    assert!(s <= 20);
    let nbrs: Vec<u32> = family
        .iter()
        .map(|&dj| {
            (0..s)
                .filter(|&i| (ground & !family[i]) & !dj == 0)
                .fold(0u32, |acc, i| acc | 1 << i)
        })
        .collect();
    (1u32..(1u32 << s)).all(|x| {
        let reach = (0..s)
            .filter(|&j| x >> j & 1 == 1)
            .fold(0u32, |acc, j| acc | nbrs[j]);
        reach.count_ones() >= x.count_ones()
    })
}
