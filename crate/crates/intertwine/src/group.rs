//! Finite groups given by multiplication tables, built by closure from generators.

use std::collections::{HashMap, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use num_complex::Complex;

use crate::error::{Error, Result};

const MAX_ORDER: usize = 5000;

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    generators: Vec<usize>,
    /// `tree[x] = Some((p, k))` means `x = p * generators[k]`.
    tree: Vec<Option<(usize, usize)>>,
    /// Breadth-first order from the identity, parents first.
    bfs: Vec<usize>,
    labels: Vec<String>,
}

impl FiniteGroup {
    /// Close `gens` under `mul`.  Element 0 is the identity.
    pub fn from_generators<T, F>(name: &str, identity: T, gens: &[T], gen_names: &[&str], mul: F) -> Result<(Self, Vec<T>)>
    where
        T: Clone + Eq + Hash + Debug,
        F: Fn(&T, &T) -> T,
    {
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::new();
        index.insert(identity, 0);
        let mut tree = vec![None];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (k, g) in gens.iter().enumerate() {
                let y = mul(&elems[x], g);
                if !index.contains_key(&y) {
                    if elems.len() >= MAX_ORDER {
                        return Err(Error::SearchBoundExceeded(format!("group {name} exceeds order {MAX_ORDER}")));
                    }
                    index.insert(y.clone(), elems.len());
                    elems.push(y);
                    tree.push(Some((x, k)));
                    queue.push_back(elems.len() - 1);
                }
            }
        }
        let n = elems.len();
        let mut table = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                let p = mul(&elems[a], &elems[b]);
                table[a][b] = *index
                    .get(&p)
                    .ok_or_else(|| Error::InvalidGroup(format!("{name} is not closed under multiplication")))?;
            }
        }
        let gen_idx: Vec<usize> = gens.iter().map(|g| index[g]).collect();
        let mut grp = Self::assemble(name, table, gen_idx)?;
        grp.tree = tree;
        grp.bfs = (0..n).collect();
        grp.labels = label_words(&grp.tree, gen_names);
        Ok((grp, elems))
    }

    /// Validate a Cayley table whose row/column 0 is the identity.
    pub fn from_table(name: &str, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidGroup(format!("{name}: table is not square over 0..{n}")));
        }
        for a in 0..n {
            if table[0][a] != a || table[a][0] != a {
                return Err(Error::InvalidGroup(format!("{name}: element 0 is not the identity")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!("{name}: not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        // greedy generating set
        let mut gens = Vec::new();
        let mut reached = vec![false; n];
        reached[0] = true;
        for g in 0..n {
            if !reached[g] {
                gens.push(g);
                reached = closure(&table, &gens);
            }
        }
        let mut grp = Self::assemble(name, table, gens)?;
        let (tree, bfs) = bfs_tree(&grp.table, &grp.generators);
        grp.tree = tree;
        grp.bfs = bfs;
        let names: Vec<String> = (0..grp.generators.len()).map(|k| format!("g{k}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        grp.labels = label_words(&grp.tree, &refs);
        Ok(grp)
    }

    fn assemble(name: &str, table: Vec<Vec<usize>>, generators: Vec<usize>) -> Result<Self> {
        let n = table.len();
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if table[a][b] == 0 {
                    inverse[a] = b;
                    break;
                }
            }
            if inverse[a] == usize::MAX || table[inverse[a]][a] != 0 {
                return Err(Error::InvalidGroup(format!("{name}: element {a} has no inverse")));
            }
        }
        Ok(FiniteGroup {
            name: name.to_string(),
            table,
            inverse,
            generators,
            tree: Vec::new(),
            bfs: Vec::new(),
            labels: Vec::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn order(&self) -> usize {
        self.table.len()
    }
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }
    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }
    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.table[x][g];
            k += 1;
        }
        k
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let mut class: Vec<usize> = (0..n).map(|g| self.mul(self.mul(g, x), self.inv(g))).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                seen[c] = true;
            }
            out.push(class);
        }
        out
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let r = closure(&self.table, gens);
        (0..self.order()).filter(|&g| r[g]).collect()
    }

    /// Extend generator images to a map on all elements along the spanning tree.
    /// Whether the result is a homomorphism is for the caller to check.
    pub fn extend<M: Clone>(&self, images: &[M], one: M, mul: impl Fn(&M, &M) -> M) -> Vec<M> {
        assert_eq!(images.len(), self.generators.len(), "one image per generator");
        let mut out: Vec<Option<M>> = vec![None; self.order()];
        out[0] = Some(one);
        for &x in &self.bfs {
            if let Some((p, k)) = self.tree[x] {
                let v = mul(out[p].as_ref().expect("parent before child"), &images[k]);
                out[x] = Some(v);
            }
        }
        out.into_iter().map(|m| m.expect("tree spans the group")).collect()
    }

    /// Subgroup on the given elements, reindexed with its own table.
    pub fn subgroup(self: &Arc<Self>, name: &str, elements: &[usize]) -> Result<Subgroup> {
        let mut elems: Vec<usize> = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if elems.first() != Some(&0) {
            return Err(Error::NotASubgroup(format!("{name} does not contain the identity")));
        }
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let mut table = vec![vec![0; elems.len()]; elems.len()];
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                table[i][j] = *pos
                    .get(&self.mul(a, b))
                    .ok_or_else(|| Error::NotASubgroup(format!("{name} is not closed")))?;
            }
        }
        let mut k = FiniteGroup::from_table(name, table)?;
        k.labels = elems.iter().map(|&g| self.labels[g].clone()).collect();
        Ok(Subgroup { parent: self.clone(), group: Arc::new(k), embedding: elems })
    }

    pub fn trivial_subgroup(self: &Arc<Self>) -> Subgroup {
        self.subgroup("1", &[0]).expect("identity is a subgroup")
    }
}

fn closure(table: &[Vec<usize>], gens: &[usize]) -> Vec<bool> {
    let n = table.len();
    let mut reached = vec![false; n];
    reached[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for &g in gens {
            let y = table[x][g];
            if !reached[y] {
                reached[y] = true;
                queue.push_back(y);
            }
        }
    }
    reached
}

fn bfs_tree(table: &[Vec<usize>], gens: &[usize]) -> (Vec<Option<(usize, usize)>>, Vec<usize>) {
    let n = table.len();
    let mut tree = vec![None; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut order = vec![0];
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (k, &g) in gens.iter().enumerate() {
            let y = table[x][g];
            if !seen[y] {
                seen[y] = true;
                tree[y] = Some((x, k));
                order.push(y);
                queue.push_back(y);
            }
        }
    }
    (tree, order)
}

fn label_words(tree: &[Option<(usize, usize)>], names: &[&str]) -> Vec<String> {
    (0..tree.len())
        .map(|mut x| {
            let mut w = Vec::new();
            while let Some((p, k)) = tree[x] {
                w.push(names.get(k).copied().unwrap_or("?"));
                x = p;
            }
            if w.is_empty() {
                "e".into()
            } else {
                w.reverse();
                w.join("")
            }
        })
        .collect()
}

/// `K <= G` with `embedding[k]` the index in `G` of element `k` of `K`.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub parent: Arc<FiniteGroup>,
    pub group: Arc<FiniteGroup>,
    pub embedding: Vec<usize>,
}

impl Subgroup {
    pub fn index(&self) -> usize {
        self.parent.order() / self.group.order()
    }

    /// Position in `K` of a parent element, if it lies in `K`.
    pub fn locate(&self, g: usize) -> Option<usize> {
        self.embedding.binary_search(&g).ok()
    }

    /// One representative per left coset `gK`.
    pub fn left_transversal(&self) -> Vec<usize> {
        let g = &self.parent;
        let mut seen = vec![false; g.order()];
        let mut reps = Vec::new();
        for x in 0..g.order() {
            if seen[x] {
                continue;
            }
            reps.push(x);
            for &k in &self.embedding {
                seen[g.mul(x, k)] = true;
            }
        }
        reps
    }
}

pub type IntMatrix = Vec<Complex<i64>>;

/// Product of two `n x n` Gaussian-integer matrices stored row-major.
pub fn int_mul(n: usize, a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut out = vec![Complex::new(0, 0); n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == Complex::new(0, 0) {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += x * b[k * n + j];
            }
        }
    }
    out
}

pub fn int_identity(n: usize) -> IntMatrix {
    (0..n * n)
        .map(|k| if k / n == k % n { Complex::new(1, 0) } else { Complex::new(0, 0) })
        .collect()
}

pub fn int_from_real(v: &[i64]) -> IntMatrix {
    v.iter().map(|&x| Complex::new(x, 0)).collect()
}

/// Group generated by `n x n` Gaussian-integer matrices.
pub fn matrix_group(name: &str, n: usize, gens: &[IntMatrix], gen_names: &[&str]) -> Result<(FiniteGroup, Vec<IntMatrix>)> {
    if gens.iter().any(|g| g.len() != n * n) {
        return Err(Error::ShapeMismatch(format!("{name}: generators must be {n}x{n}")));
    }
    FiniteGroup::from_generators(name, int_identity(n), gens, gen_names, |a, b| int_mul(n, a, b))
}

/// `Z/n` realised by the cyclic shift matrix.
pub fn cyclic(n: usize) -> Result<(FiniteGroup, Vec<IntMatrix>)> {
    if n == 0 {
        return Err(Error::InvalidGroup("Z/0".into()));
    }
    let mut shift = vec![0i64; n * n];
    for i in 0..n {
        shift[((i + 1) % n) * n + i] = 1;
    }
    matrix_group(&format!("Z{n}"), n, &[int_from_real(&shift)], &["t"])
}

/// The underlying permutation `sigma` of a monomial matrix, `M[i][sigma(i)] != 0`.
pub fn monomial_permutation(n: usize, m: &IntMatrix) -> Vec<usize> {
    (0..n)
        .map(|i| {
            (0..n)
                .find(|&j| m[i * n + j] != Complex::new(0, 0))
                .expect("monomial matrix")
        })
        .collect()
}

pub fn permutation_sign(p: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        let r = int_from_real(&[0, 0, 1, 1, 0, 0, 0, 1, 0]);
        let s = int_from_real(&[0, 1, 0, 1, 0, 0, 0, 0, 1]);
        matrix_group("S3", 3, &[r, s], &["r", "s"]).unwrap().0
    }

    #[test]
    fn closure_orders() {
        assert_eq!(s3().order(), 6);
        assert_eq!(cyclic(5).unwrap().0.order(), 5);
        assert!(cyclic(5).unwrap().0.is_abelian());
        assert!(!s3().is_abelian());
        assert_eq!(s3().conjugacy_classes().len(), 3);
    }

    #[test]
    fn table_round_trip() {
        let g = s3();
        let h = FiniteGroup::from_table("S3", g.table().to_vec()).unwrap();
        assert_eq!(h.order(), 6);
        assert_eq!(h.conjugacy_classes().len(), 3);
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(FiniteGroup::from_table("bad", bad), Err(Error::InvalidGroup(_))));
    }

    #[test]
    fn subgroups_and_cosets() {
        let g = Arc::new(s3());
        let rot = g.generated(&[g.generators()[0]]);
        assert_eq!(rot.len(), 3);
        let k = g.subgroup("A3", &rot).unwrap();
        assert_eq!(k.index(), 2);
        assert_eq!(k.left_transversal().len(), 2);
        assert!(matches!(g.subgroup("x", &[0, g.generators()[0]]), Err(Error::NotASubgroup(_))));
    }

    #[test]
    fn extension_along_tree() {
        let g = s3();
        let signs = g.extend(&[1i64, -1], 1, |a, b| a * b);
        let classes = g.conjugacy_classes();
        for c in classes {
            assert!(c.iter().all(|&x| signs[x] == signs[c[0]]));
        }
    }
}
