//! Combinatorics of the symmetric group S_{n+1}.
//!
//! Permutations are stored in one-line notation. A word s_{a1}...s_{ak} is
//! evaluated by right multiplication (swap positions a, a+1), and a
//! transposition acts on the left by swapping letters.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Permutation {
    oneline: Vec<usize>,
}

/// A transposition (i j) with i < j.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Transposition {
    pub i: usize,
    pub j: usize,
}

impl Transposition {
    pub fn new(a: usize, b: usize) -> Self {
        assert!(a != b, "transposition needs two distinct letters");
        Transposition { i: a.min(b), j: a.max(b) }
    }
}

impl fmt::Display for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

impl Permutation {
    pub fn new(oneline: Vec<usize>) -> Result<Self> {
        let n = oneline.len();
        if n == 0 {
            return Err(Error::Parse("empty permutation".into()));
        }
        let mut seen = vec![false; n + 1];
        for &x in &oneline {
            if x == 0 || x > n || seen[x] {
                return Err(Error::Parse(format!("{oneline:?} is not a permutation of 1..{n}")));
            }
            seen[x] = true;
        }
        Ok(Permutation { oneline })
    }

    pub fn identity(rank: usize) -> Self {
        Permutation { oneline: (1..=rank).collect() }
    }

    /// Evaluates s_{a1} s_{a2} ... s_{ak} in S_rank.
    pub fn from_word(rank: usize, word: &[usize]) -> Self {
        let mut p = Self::identity(rank);
        for &a in word {
            assert!(a >= 1 && a < rank, "simple reflection s_{a} out of range");
            p.oneline.swap(a - 1, a);
        }
        p
    }

    /// Parses "45231" (ranks up to 9) or "1,2,10,...".
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let v: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{t}: {e}"))))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse(format!("bad digit {c:?} in {s:?}"))))
                .collect::<Result<_>>()?
        };
        Self::new(v)
    }

    pub fn rank(&self) -> usize {
        self.oneline.len()
    }

    pub fn oneline(&self) -> &[usize] {
        &self.oneline
    }

    /// positions[x] = index of the letter x (1-based letter, 0-based index).
    fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.rank() + 1];
        for (k, &x) in self.oneline.iter().enumerate() {
            pos[x] = k;
        }
        pos
    }

    pub fn is_identity(&self) -> bool {
        self.oneline.iter().enumerate().all(|(k, &x)| x == k + 1)
    }

    pub fn length(&self) -> usize {
        let w = &self.oneline;
        let mut count = 0;
        for a in 0..w.len() {
            for b in a + 1..w.len() {
                if w[a] > w[b] {
                    count += 1;
                }
            }
        }
        count
    }

    /// t·w: swap the letters t.i and t.j.
    pub fn left_mul(&self, t: Transposition) -> Self {
        let mut v = self.oneline.clone();
        for x in v.iter_mut() {
            if *x == t.i {
                *x = t.j;
            } else if *x == t.j {
                *x = t.i;
            }
        }
        Permutation { oneline: v }
    }

    /// w·s_a: swap positions a and a+1.
    pub fn right_mul_simple(&self, a: usize) -> Self {
        let mut v = self.oneline.clone();
        v.swap(a - 1, a);
        Permutation { oneline: v }
    }

    /// Is s_a a left descent, i.e. does a+1 precede a?
    pub fn has_left_descent(&self, a: usize) -> bool {
        let pos = self.positions();
        pos[a + 1] < pos[a]
    }

    pub fn has_right_descent(&self, a: usize) -> bool {
        self.oneline[a - 1] > self.oneline[a]
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank() <= 9 {
            for x in &self.oneline {
                write!(f, "{x}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.oneline.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

/// Direction of the edge between vertices k and k+1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Dir {
    /// k -> k+1, written '>'
    Right,
    /// k <- k+1, written '<'
    Left,
}

/// An orientation of the linear graph 1 - 2 - ... - n.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Orientation {
    pub n: usize,
    pub dirs: Vec<Dir>,
}

impl Orientation {
    pub fn new(dirs: Vec<Dir>) -> Self {
        Orientation { n: dirs.len() + 1, dirs }
    }

    /// 1 <- 2 <- ... <- n.
    pub fn linear(n: usize) -> Self {
        Self::new(vec![Dir::Left; n.saturating_sub(1)])
    }

    /// Parses strings like "1>2<3". Vertices must read 1, 2, ..., n.
    pub fn parse(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut dirs = Vec::new();
        let mut expect = 1usize;
        let mut num = String::new();
        let flush = |num: &mut String, expect: &mut usize| -> Result<()> {
            let v: usize = num.parse().map_err(|_| Error::Parse(format!("bad quiver string {s:?}")))?;
            if v != *expect {
                return Err(Error::Parse(format!("quiver vertices must be 1..n in order, got {v} expecting {expect}")));
            }
            *expect += 1;
            num.clear();
            Ok(())
        };
        for c in s.chars() {
            match c {
                '0'..='9' => num.push(c),
                '>' | '<' => {
                    flush(&mut num, &mut expect)?;
                    dirs.push(if c == '>' { Dir::Right } else { Dir::Left });
                }
                _ => return Err(Error::Parse(format!("unexpected {c:?} in quiver string {s:?}"))),
            }
        }
        flush(&mut num, &mut expect)?;
        Ok(Self::new(dirs))
    }

    /// Every orientation of A_n, in the order of their direction strings.
    pub fn all(n: usize) -> Vec<Orientation> {
        let e = n.saturating_sub(1);
        (0..1usize << e)
            .map(|mask| {
                Self::new((0..e).map(|k| if mask >> (e - 1 - k) & 1 == 1 { Dir::Left } else { Dir::Right }).collect())
            })
            .collect()
    }

    /// Direction of the edge between k and k+1 (1-based k).
    pub fn edge(&self, k: usize) -> Dir {
        self.dirs[k - 1]
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1")?;
        for (k, d) in self.dirs.iter().enumerate() {
            let c = if *d == Dir::Right { '>' } else { '<' };
            write!(f, "{c}{}", k + 2)?;
        }
        Ok(())
    }
}

/// A reduced word for a Coxeter element: each of 1..n exactly once.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct CoxeterWord {
    pub word: Vec<usize>,
}

impl CoxeterWord {
    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn rank(&self) -> usize {
        self.word.len() + 1
    }

    pub fn permutation(&self) -> Permutation {
        Permutation::from_word(self.rank(), &self.word)
    }
}

pub fn inversions(w: &Permutation) -> BTreeSet<Transposition> {
    let pos = w.positions();
    let r = w.rank();
    let mut out = BTreeSet::new();
    for i in 1..=r {
        for j in i + 1..=r {
            if pos[j] < pos[i] {
                out.insert(Transposition { i, j });
            }
        }
    }
    out
}

pub fn bruhat_inversions(w: &Permutation) -> BTreeSet<Transposition> {
    let inv = inversions(w);
    inv.iter()
        .copied()
        .filter(|t| {
            !(t.i + 1..t.j).any(|l| inv.contains(&Transposition { i: t.i, j: l }) && inv.contains(&Transposition { i: l, j: t.j }))
        })
        .collect()
}

/// Indices i such that some letter > i sits in the first i positions.
pub fn support(w: &Permutation) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    let mut max = 0;
    for (k, &x) in w.oneline().iter().enumerate().take(w.rank() - 1) {
        max = max.max(x);
        if max > k + 1 {
            out.insert(k + 1);
        }
    }
    out
}

/// The canonical word of the Coxeter element of Q: s_i comes before s_j
/// whenever Q has an arrow i <- j, ties broken by the smaller index.
pub fn coxeter_element(q: &Orientation) -> CoxeterWord {
    let n = q.n;
    let mut indeg = vec![0usize; n + 1];
    let mut after: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for k in 1..n {
        let (first, second) = match q.edge(k) {
            Dir::Left => (k, k + 1),
            Dir::Right => (k + 1, k),
        };
        after[first].push(second);
        indeg[second] += 1;
    }
    let mut ready: BTreeSet<usize> = (1..=n).filter(|&k| indeg[k] == 0).collect();
    let mut word = Vec::with_capacity(n);
    while let Some(k) = ready.pop_first() {
        word.push(k);
        for &m in &after[k] {
            indeg[m] -= 1;
            if indeg[m] == 0 {
                ready.insert(m);
            }
        }
    }
    CoxeterWord { word }
}

/// The c-sorting word of w: the leftmost reduced subword of c c c ...
/// Each block is the subword taken from one copy of c.
pub fn sorting_word(w: &Permutation, c: &CoxeterWord) -> Result<Vec<Vec<usize>>> {
    if w.rank() != c.rank() {
        return Err(Error::RankMismatch { expected: c.rank(), found: w.rank() });
    }
    let mut u = w.clone();
    let mut blocks = Vec::new();
    while !u.is_identity() {
        let mut block = Vec::new();
        for &s in &c.word {
            if u.has_left_descent(s) {
                u = u.left_mul(Transposition { i: s, j: s + 1 });
                block.push(s);
            }
        }
        blocks.push(block);
    }
    Ok(blocks)
}

/// Positions of the c-sorting word of w inside c^infinity.
pub fn sorting_positions(w: &Permutation, c: &CoxeterWord) -> Result<Vec<usize>> {
    let blocks = sorting_word(w, c)?;
    let n = c.n();
    let mut out = Vec::new();
    for (k, block) in blocks.iter().enumerate() {
        for s in block {
            let idx = c.word.iter().position(|x| x == s).expect("letter of c");
            out.push(k * n + idx);
        }
    }
    Ok(out)
}

/// Returns the factorization into nested subwords of c when w is c-sortable.
pub fn is_c_sortable(w: &Permutation, c: &CoxeterWord) -> Result<Option<Vec<Vec<usize>>>> {
    let blocks = sorting_word(w, c)?;
    let nested = blocks.windows(2).all(|p| p[1].iter().all(|s| p[0].contains(s)));
    Ok(if nested { Some(blocks) } else { None })
}

/// All c-sortable elements, ordered by length and then one-line notation.
pub fn enumerate_c_sortable(c: &CoxeterWord) -> Vec<Permutation> {
    let mut out: Vec<Permutation> = all_permutations(c.rank())
        .into_iter()
        .filter(|w| matches!(is_c_sortable(w, c), Ok(Some(_))))
        .collect();
    out.sort_by(|a, b| a.length().cmp(&b.length()).then_with(|| a.cmp(b)));
    out
}

/// Same elements, ordered by length and then by the positions of their
/// sorting words in c^infinity (the order used when printing tables).
pub fn enumerate_c_sortable_by_sorting_word(c: &CoxeterWord) -> Vec<Permutation> {
    let mut keyed: Vec<(usize, Vec<usize>, Permutation)> = enumerate_c_sortable(c)
        .into_iter()
        .map(|w| (w.length(), sorting_positions(&w, c).expect("same rank"), w))
        .collect();
    keyed.sort();
    keyed.into_iter().map(|(_, _, w)| w).collect()
}

pub fn is_231_avoiding(w: &Permutation) -> bool {
    let v = w.oneline();
    let r = v.len();
    for a in 0..r {
        for b in a + 1..r {
            if v[b] <= v[a] {
                continue;
            }
            for c in b + 1..r {
                if v[c] < v[a] {
                    return false;
                }
            }
        }
    }
    true
}

/// Every permutation of 1..rank in lexicographic order.
pub fn all_permutations(rank: usize) -> Vec<Permutation> {
    let mut cur: Vec<usize> = (1..=rank).collect();
    let mut out = vec![Permutation { oneline: cur.clone() }];
    loop {
        let Some(k) = (0..rank.saturating_sub(1)).rev().find(|&k| cur[k] < cur[k + 1]) else { break };
        let l = (k + 1..rank).rev().find(|&l| cur[l] > cur[k]).unwrap();
        cur.swap(k, l);
        cur[k + 1..].reverse();
        out.push(Permutation { oneline: cur.clone() });
    }
    out
}

pub fn format_transpositions<'a>(ts: impl IntoIterator<Item = &'a Transposition>) -> String {
    let parts: Vec<String> = ts.into_iter().map(|t| t.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

pub fn catalan(n: usize) -> usize {
    let mut c = 1usize;
    for k in 0..n {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::{HashSet, VecDeque};

    fn p(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    fn tset(pairs: &[(usize, usize)]) -> BTreeSet<Transposition> {
        pairs.iter().map(|&(i, j)| Transposition::new(i, j)).collect()
    }

    // length by breadth-first search in the Cayley graph of simple reflections
    fn bfs_lengths(rank: usize) -> std::collections::HashMap<Permutation, usize> {
        let mut dist = std::collections::HashMap::new();
        let id = Permutation::identity(rank);
        dist.insert(id.clone(), 0);
        let mut q = VecDeque::from([id]);
        while let Some(u) = q.pop_front() {
            let d = dist[&u];
            for a in 1..rank {
                let v = u.right_mul_simple(a);
                if !dist.contains_key(&v) {
                    dist.insert(v.clone(), d + 1);
                    q.push_back(v);
                }
            }
        }
        dist
    }

    // all products c_{K0} c_{K1} ... with K0 ⊇ K1 ⊇ ... that stay reduced
    fn sortable_by_search(c: &CoxeterWord) -> HashSet<Permutation> {
        let n = c.n();
        let mut found = HashSet::new();
        let mut stack = vec![(Permutation::identity(c.rank()), (1usize << n) - 1)];
        while let Some((u, allowed)) = stack.pop() {
            found.insert(u.clone());
            let mut sub = allowed;
            while sub != 0 {
                let mut v = u.clone();
                let mut ok = true;
                for &s in &c.word {
                    if sub >> (s - 1) & 1 == 1 {
                        if v.has_right_descent(s) {
                            ok = false;
                            break;
                        }
                        v = v.right_mul_simple(s);
                    }
                }
                if ok {
                    stack.push((v, sub));
                }
                sub = (sub - 1) & allowed;
            }
        }
        found
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(inversions(&p("45231")), tset(&[(1, 2), (1, 3), (1, 4), (1, 5), (2, 4), (2, 5), (3, 4), (3, 5)]));
        assert!(inversions(&p("1234")).is_empty());
        assert_eq!(inversions(&p("1324")), tset(&[(2, 3)]));
    }

    #[test]
    fn bruhat_examples() {
        assert_eq!(bruhat_inversions(&p("45231")), tset(&[(1, 2), (1, 3), (2, 4), (2, 5), (3, 4), (3, 5)]));
        assert_eq!(bruhat_inversions(&p("54213")), tset(&[(1, 2), (2, 4), (3, 4), (4, 5)]));
        for a in 1..5 {
            let s = Permutation::from_word(5, &[a]);
            assert_eq!(bruhat_inversions(&s), tset(&[(a, a + 1)]));
        }
    }

    #[test]
    fn support_examples() {
        assert_eq!(support(&p("21543")), BTreeSet::from([1, 3, 4]));
        assert_eq!(support(&p("12543")), BTreeSet::from([3, 4]));
        assert!(support(&p("12345")).is_empty());
    }

    #[test]
    fn coxeter_examples() {
        let c = coxeter_element(&Orientation::parse("1>2<3").unwrap());
        assert_eq!(c.word, vec![2, 1, 3]);
        assert_eq!(c.permutation(), p("3142"));
        let c = coxeter_element(&Orientation::parse("1<2<3").unwrap());
        assert_eq!(c.word, vec![1, 2, 3]);
        assert_eq!(c.permutation(), p("2341"));
        let c = coxeter_element(&Orientation::parse("1").unwrap());
        assert_eq!(c.permutation(), p("21"));
        let c = coxeter_element(&Orientation::parse("1<2>3<4").unwrap());
        assert_eq!(c.permutation(), p("24153"));
    }

    #[test]
    fn orientation_round_trip() {
        for n in 1..6 {
            for q in Orientation::all(n) {
                assert_eq!(Orientation::parse(&q.to_string()).unwrap(), q);
            }
        }
        assert!(Orientation::parse("1>3").is_err());
        assert!(Orientation::parse("1>2x3").is_err());
    }

    #[test]
    fn sortable_examples() {
        let c = coxeter_element(&Orientation::parse("1>2<3").unwrap());
        let f = is_c_sortable(&p("3412"), &c).unwrap().unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f[0].iter().copied().collect::<BTreeSet<_>>(), BTreeSet::from([1, 2, 3]));
        assert_eq!(f[1], vec![2]);
        assert_eq!(is_c_sortable(&p("1234"), &c).unwrap(), Some(vec![]));
        assert_eq!(is_c_sortable(&p("4231"), &c).unwrap(), None);
        assert!(is_c_sortable(&p("12345"), &c).is_err());
    }

    #[test]
    fn enumerate_examples() {
        let c = coxeter_element(&Orientation::parse("1>2<3").unwrap());
        let all = enumerate_c_sortable(&c);
        let want: BTreeSet<Permutation> = [
            "1234", "1324", "2134", "1243", "3124", "1342", "2143", "3214", "1432", "3142", "3412", "4312", "3421", "4321",
        ]
        .iter()
        .map(|s| p(s))
        .collect();
        assert_eq!(all.iter().cloned().collect::<BTreeSet<_>>(), want);
        assert_eq!(all.len(), 14);
        let c = coxeter_element(&Orientation::parse("1").unwrap());
        assert_eq!(enumerate_c_sortable(&c), vec![p("12"), p("21")]);
        let c = coxeter_element(&Orientation::parse("1<2>3<4").unwrap());
        assert_eq!(enumerate_c_sortable(&c).len(), 42);
    }

    #[test]
    fn table_order_for_faithful_rows() {
        let c = coxeter_element(&Orientation::parse("1<2>3<4").unwrap());
        let rows: Vec<String> = enumerate_c_sortable_by_sorting_word(&c)
            .into_iter()
            .filter(|w| support(w).len() == 4)
            .map(|w| w.to_string())
            .collect();
        let want = [
            "24153", "42153", "24513", "42513", "25413", "24531", "45213", "42531", "25431", "45231", "54213", "54231", "45321",
            "54321",
        ];
        assert_eq!(rows, want);
    }

    #[test]
    fn greedy_matches_subword_search() {
        for n in 1..=5 {
            for q in Orientation::all(n) {
                let c = coxeter_element(&q);
                let greedy: HashSet<Permutation> = enumerate_c_sortable(&c).into_iter().collect();
                assert_eq!(greedy, sortable_by_search(&c), "orientation {q}");
                assert_eq!(greedy.len(), catalan(n + 1));
            }
        }
    }

    #[test]
    fn linear_orientation_is_231_avoiding() {
        for n in 1..=4 {
            let q = Orientation::new(vec![Dir::Right; n - 1]);
            let c = coxeter_element(&q);
            assert_eq!(c.word, (1..=n).rev().collect::<Vec<_>>());
            for w in all_permutations(n + 1) {
                assert_eq!(is_c_sortable(&w, &c).unwrap().is_some(), is_231_avoiding(&w), "w = {w}");
            }
        }
    }

    #[test]
    fn avoiding_examples() {
        assert!(!is_231_avoiding(&p("45231")));
        assert!(is_231_avoiding(&p("12345")));
        assert!(is_231_avoiding(&p("1324")));
    }

    #[test]
    fn binv_count_equals_support_for_231_avoiding() {
        for rank in 1..=6 {
            for w in all_permutations(rank) {
                if is_231_avoiding(&w) {
                    assert_eq!(bruhat_inversions(&w).len(), support(&w).len(), "w = {w}");
                }
            }
        }
    }

    #[test]
    fn length_matches_bfs() {
        for rank in 1..=5 {
            let dist = bfs_lengths(rank);
            for (w, d) in dist {
                assert_eq!(inversions(&w).len(), d);
            }
        }
    }

    #[test]
    fn coxeter_element_shape() {
        for n in 1..=6 {
            for q in Orientation::all(n) {
                let c = coxeter_element(&q).permutation();
                assert_eq!(inversions(&c).len(), n);
                assert_eq!(support(&c), (1..=n).collect());
            }
        }
    }

    #[test]
    fn catalan_numbers() {
        assert_eq!((0..7).map(catalan).collect::<Vec<_>>(), vec![1, 1, 2, 5, 14, 42, 132]);
    }

    fn perm_strategy() -> impl Strategy<Value = Permutation> {
        (1usize..9).prop_flat_map(|r| Just((1..=r).collect::<Vec<_>>()).prop_shuffle()).prop_map(|v| Permutation::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn bruhat_inversions_drop_length_by_one(w in perm_strategy()) {
            let inv = inversions(&w);
            for t in bruhat_inversions(&w) {
                prop_assert!(inv.contains(&t));
                prop_assert_eq!(inversions(&w.left_mul(t)).len() + 1, inv.len());
            }
        }

        #[test]
        fn inversion_count_is_length(w in perm_strategy()) {
            prop_assert_eq!(inversions(&w).len(), w.length());
        }

        #[test]
        fn parse_round_trip(w in perm_strategy()) {
            prop_assert_eq!(Permutation::parse(&w.to_string()).unwrap(), w);
        }
    }
}
