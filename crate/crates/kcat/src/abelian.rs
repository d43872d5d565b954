//! Finitely presented abelian groups over exact integers.
//!
//! A group is presented by named generators and a list of integer relation
//! vectors. The canonical form (free rank plus invariant factors) is obtained
//! from the Smith normal form of the relation matrix, computed over
//! arbitrary-precision integers so invariant factors are exact.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense integer matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = IntMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(*v));
            }
        }
        m
    }

    /// Columns are relation vectors over `rows` generators.
    pub fn from_columns(rows: usize, cols: &[Vec<BigInt>]) -> Self {
        let mut m = IntMatrix::zero(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "relation vector length mismatch");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row(a) -= q * row(b)
    fn row_axpy(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(b, j) * q;
            let cur = self.get(a, j).clone();
            self.set(a, j, cur - v);
        }
    }

    fn col_axpy(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, b) * q;
            let cur = self.get(i, a).clone();
            self.set(i, a, cur - v);
        }
    }
}

/// Diagonal of the Smith normal form, nonzero entries only, each dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
}

/// Smith normal form by repeated pivoting on a minimal nonzero entry.
pub fn smith_normal_form(input: &IntMatrix) -> Snf {
    let mut m = input.clone();
    let n = m.rows.min(m.cols);
    let mut t = 0usize;
    while t < n {
        // pick pivot with minimal absolute value in the remaining block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..m.rows {
            for j in t..m.cols {
                if !m.get(i, j).is_zero() {
                    match pivot {
                        None => pivot = Some((i, j)),
                        Some((pi, pj)) => {
                            if m.get(i, j).abs() < m.get(pi, pj).abs() {
                                pivot = Some((i, j));
                            }
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap_rows(t, pi);
        m.swap_cols(t, pj);

        // clear row and column t; restart if a remainder re-appears
        loop {
            let mut dirty = false;
            for i in (t + 1)..m.rows {
                if !m.get(i, t).is_zero() {
                    let q = m.get(i, t) / m.get(t, t);
                    m.row_axpy(i, t, &q);
                    if !m.get(i, t).is_zero() {
                        // remainder smaller than pivot: swap it up and retry
                        m.swap_rows(t, i);
                        dirty = true;
                    }
                }
            }
            for j in (t + 1)..m.cols {
                if !m.get(t, j).is_zero() {
                    let q = m.get(t, j) / m.get(t, t);
                    m.col_axpy(j, t, &q);
                    if !m.get(t, j).is_zero() {
                        m.swap_cols(t, j);
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
        }

        // divisibility: pivot must divide every remaining entry
        let mut fixed = false;
        'outer: for i in (t + 1)..m.rows {
            for j in (t + 1)..m.cols {
                if !(m.get(i, j) % m.get(t, t)).is_zero() {
                    // add row i to row t and redo this diagonal slot
                    let one = BigInt::one();
                    let minus = -one;
                    m.row_axpy(t, i, &minus);
                    fixed = true;
                    break 'outer;
                }
            }
        }
        if fixed {
            continue;
        }
        t += 1;
    }
    let mut diagonal = Vec::new();
    for k in 0..n {
        let v = m.get(k, k).abs();
        if !v.is_zero() {
            diagonal.push(v);
        }
    }
    let rank = diagonal.len();
    Snf { diagonal, rank }
}

/// Canonical form of a finitely generated abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalAbGroup {
    pub free_rank: usize,
    /// Invariant factors > 1, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
}

impl CanonicalAbGroup {
    pub fn trivial() -> Self {
        CanonicalAbGroup { free_rank: 0, invariant_factors: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        CanonicalAbGroup { free_rank: rank, invariant_factors: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Self {
        if n == 0 {
            CanonicalAbGroup::free(1)
        } else if n == 1 {
            CanonicalAbGroup::trivial()
        } else {
            CanonicalAbGroup { free_rank: 0, invariant_factors: vec![BigInt::from(n)] }
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }
}

impl fmt::Display for CanonicalAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{}", r)),
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z/{}", d));
        }
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// Generators plus integer relation vectors.
#[derive(Clone, Debug)]
pub struct AbGroupPresentation {
    pub generators: Vec<String>,
    /// Each relation is a coefficient vector over the generators.
    pub relations: Vec<Vec<BigInt>>,
}

impl AbGroupPresentation {
    pub fn new(generators: Vec<String>) -> Self {
        AbGroupPresentation { generators, relations: Vec::new() }
    }

    pub fn add_relation(&mut self, coeffs: Vec<BigInt>) {
        assert_eq!(coeffs.len(), self.generators.len());
        self.relations.push(coeffs);
    }

    pub fn add_relation_i64(&mut self, coeffs: &[i64]) {
        self.add_relation(coeffs.iter().map(|v| BigInt::from(*v)).collect());
    }

    /// Sparse relation: sum of coeff * generator = 0.
    pub fn add_sparse_relation(&mut self, terms: &[(usize, i64)]) {
        let mut v = vec![BigInt::zero(); self.generators.len()];
        for (idx, c) in terms {
            v[*idx] += BigInt::from(*c);
        }
        self.relations.push(v);
    }

    pub fn canonical(&self) -> CanonicalAbGroup {
        let n = self.generators.len();
        let reduced = hermite_reduce(n, &self.relations);
        let m = IntMatrix::from_columns(n, &reduced);
        let snf = smith_normal_form(&m);
        let free_rank = n - snf.rank;
        let invariant_factors: Vec<BigInt> =
            snf.diagonal.into_iter().filter(|d| !d.is_one()).collect();
        CanonicalAbGroup { free_rank, invariant_factors }
    }
}

/// Column-style Hermite reduction: returns a small generating set of the
/// lattice spanned by `columns` inside Z^n. Keeps SNF inputs tiny even when
/// relation streams are large.
pub fn hermite_reduce(n: usize, columns: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    // basis[p] = column with topmost nonzero entry at row p
    let mut basis: Vec<Option<Vec<BigInt>>> = vec![None; n];
    for col in columns {
        let mut v = col.clone();
        loop {
            let Some(p) = v.iter().position(|x| !x.is_zero()) else { break };
            match &mut basis[p] {
                slot @ None => {
                    *slot = Some(v);
                    break;
                }
                Some(b) => {
                    // two-column gcd step at row p
                    let (g, s, t) = ext_gcd(&b[p], &v[p]);
                    let bp = b[p].clone();
                    let vp = v[p].clone();
                    let u1 = &vp / &g;
                    let u2 = &bp / &g;
                    for i in p..n {
                        let nb = &s * &b[i] + &t * &v[i];
                        let nv = &u1 * &b[i] - &u2 * &v[i];
                        // nv has zero at row p: u1*bp - u2*vp = (vp*bp - bp*vp)/g
                        b[i] = nb;
                        v[i] = nv;
                    }
                }
            }
        }
    }
    basis.into_iter().flatten().collect()
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g >= 0.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r);
        let s = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s);
        let t = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Is the vector in the integer span of the columns? (columns must come from
/// `hermite_reduce`, i.e. with strictly increasing pivot rows)
pub fn in_lattice(basis: &[Vec<BigInt>], vector: &[BigInt]) -> bool {
    let mut v = vector.to_vec();
    for b in basis {
        let p = b.iter().position(|x| !x.is_zero()).expect("empty basis column");
        if v[p].is_zero() {
            continue;
        }
        if !(&v[p] % &b[p]).is_zero() {
            return false;
        }
        let q = &v[p] / &b[p];
        for i in p..v.len() {
            let w = &b[i] * &q;
            v[i] -= w;
        }
    }
    v.iter().all(|x| x.is_zero())
}

/// Group homomorphism between presented abelian groups, as images of the
/// source generators.
#[derive(Clone, Debug)]
pub struct AbMap {
    /// images[i] = image of source generator i, as a vector over target generators.
    pub images: Vec<Vec<BigInt>>,
}

impl AbMap {
    pub fn from_generator_images(images: Vec<Vec<BigInt>>) -> Self {
        AbMap { images }
    }

    fn apply(&self, v: &[BigInt], target_len: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); target_len];
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, w) in self.images[i].iter().enumerate() {
                let add = w * c;
                out[j] += add;
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbMapVerdict {
    Isomorphism,
    NotWellDefined,
    NotSurjective,
    NotInjective,
}

/// Decides whether the induced map source -> target is an isomorphism.
///
/// Well-definedness: images of source relations lie in the target relation
/// lattice. Surjectivity: images plus target relations span Z^target.
/// Injectivity then follows from surjectivity plus equal canonical forms
/// (finitely generated abelian groups are Hopfian).
pub fn induced_map_verdict(
    map: &AbMap,
    source: &AbGroupPresentation,
    target: &AbGroupPresentation,
) -> AbMapVerdict {
    let tn = target.generators.len();
    let target_basis = hermite_reduce(tn, &target.relations);
    for rel in &source.relations {
        let img = map.apply(rel, tn);
        if !in_lattice(&target_basis, &img) {
            return AbMapVerdict::NotWellDefined;
        }
    }
    // surjectivity: lattice spanned by generator images + target relations is Z^tn
    let mut cols: Vec<Vec<BigInt>> = map.images.clone();
    cols.extend(target.relations.iter().cloned());
    let reduced = hermite_reduce(tn, &cols);
    let m = IntMatrix::from_columns(tn, &reduced);
    let snf = smith_normal_form(&m);
    let onto = snf.rank == tn && snf.diagonal.iter().all(|d| d.is_one());
    if !onto {
        return AbMapVerdict::NotSurjective;
    }
    if source.canonical() != target.canonical() {
        return AbMapVerdict::NotInjective;
    }
    AbMapVerdict::Isomorphism
}

/// Word presentation of a (possibly nonabelian) group; only used to carry
/// fundamental group output, so the interface stays small.
#[derive(Clone, Debug)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    /// Relator words: (generator index, exponent ±1), read left to right.
    pub relators: Vec<Vec<(usize, i32)>>,
}

impl GroupPresentation {
    pub fn abelianized(&self) -> AbGroupPresentation {
        let mut pres = AbGroupPresentation::new(self.generators.clone());
        for rel in &self.relators {
            let mut v = vec![BigInt::zero(); self.generators.len()];
            for (g, e) in rel {
                v[*g] += BigInt::from(*e);
            }
            pres.relations.push(v);
        }
        pres
    }

    pub fn is_well_formed(&self) -> bool {
        self.relators
            .iter()
            .all(|r| r.iter().all(|(g, e)| *g < self.generators.len() && (*e == 1 || *e == -1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Invariant factors via determinant divisors: d_k = gcd of all k x k
    /// minors, s_k = d_k / d_{k-1}. Exhaustive over index subsets, so it is
    /// independent of the elimination code above.
    fn invariant_factors_by_minors(m: &IntMatrix) -> Vec<BigInt> {
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            let mut out = Vec::new();
            let mut cur = Vec::new();
            fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
                if cur.len() == k {
                    out.push(cur.clone());
                    return;
                }
                for i in start..n {
                    cur.push(i);
                    rec(i + 1, n, k, cur, out);
                    cur.pop();
                }
            }
            rec(0, n, k, &mut cur, &mut out);
            out
        }
        fn det(m: &IntMatrix, rows: &[usize], cols: &[usize]) -> BigInt {
            if rows.len() == 1 {
                return m.get(rows[0], cols[0]).clone();
            }
            let mut acc = BigInt::zero();
            let sub_rows = &rows[1..];
            for (idx, &c) in cols.iter().enumerate() {
                let rest: Vec<usize> =
                    cols.iter().copied().filter(|&x| x != c).collect();
                let minor = det(m, sub_rows, &rest);
                let term = m.get(rows[0], c) * minor;
                if idx % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
        let n = m.rows.min(m.cols);
        let mut dk_prev = BigInt::one();
        let mut out = Vec::new();
        for k in 1..=n {
            let mut g = BigInt::zero();
            for rs in subsets(m.rows, k) {
                for cs in subsets(m.cols, k) {
                    let d = det(m, &rs, &cs).abs();
                    g = ext_gcd(&g, &d).0;
                }
            }
            if g.is_zero() {
                break;
            }
            let s = &g / &dk_prev;
            out.push(s);
            dk_prev = g;
        }
        out
    }

    fn snf_factors(m: &IntMatrix) -> Vec<BigInt> {
        smith_normal_form(m).diagonal
    }

    #[test]
    fn snf_matches_minor_oracle_on_fixed_matrices() {
        let cases: Vec<Vec<Vec<i64>>> = vec![
            vec![vec![2, 0], vec![0, 3]],
            vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]],
            vec![vec![1, 2], vec![3, 4]],
            vec![vec![0, 0], vec![0, 0]],
            vec![vec![6, 0, 0, 0], vec![0, 10, 0, 0], vec![0, 0, 15, 0], vec![0, 0, 0, 0]],
            vec![vec![3, 1, -4, 2], vec![0, 2, 7, -1], vec![5, -3, 2, 2], vec![1, 1, 1, 1]],
            vec![vec![4, -2], vec![2, 2], vec![6, 6]],
        ];
        for rows in cases {
            let m = IntMatrix::from_i64_rows(&rows);
            assert_eq!(snf_factors(&m), invariant_factors_by_minors(&m), "matrix {:?}", rows);
        }
    }

    proptest::proptest! {
        #[test]
        fn snf_matches_minor_oracle_random(entries in proptest::collection::vec(-9i64..=9, 16)) {
            let rows: Vec<Vec<i64>> = entries.chunks(4).map(|c| c.to_vec()).collect();
            let m = IntMatrix::from_i64_rows(&rows);
            proptest::prop_assert_eq!(snf_factors(&m), invariant_factors_by_minors(&m));
        }

        #[test]
        fn snf_divisibility_chain(entries in proptest::collection::vec(-20i64..=20, 12)) {
            let rows: Vec<Vec<i64>> = entries.chunks(4).map(|c| c.to_vec()).collect();
            let m = IntMatrix::from_i64_rows(&rows);
            let snf = smith_normal_form(&m);
            for w in snf.diagonal.windows(2) {
                proptest::prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn canonical_form_examples() {
        // Z^2 from 3 generators, one relation 2a = 2b is not torsion-free; check exact form
        let mut p = AbGroupPresentation::new(vec!["a".into(), "b".into(), "c".into()]);
        p.add_relation_i64(&[2, -2, 0]);
        let c = p.canonical();
        assert_eq!(c.free_rank, 2);
        assert_eq!(c.invariant_factors.len(), 1);
        assert_eq!(c.invariant_factors[0], BigInt::from(2));
        assert_eq!(c.to_string(), "Z^2 ⊕ Z/2");

        let mut q = AbGroupPresentation::new(vec!["x".into()]);
        q.add_relation_i64(&[3]);
        assert_eq!(q.canonical(), CanonicalAbGroup::cyclic(3));
        assert_eq!(q.canonical().to_string(), "Z/3");

        let trivial = AbGroupPresentation::new(vec![]);
        assert_eq!(trivial.canonical().to_string(), "0");
    }

    #[test]
    fn hermite_reduction_preserves_lattice_membership() {
        let cols = vec![
            vec![BigInt::from(2), BigInt::from(4)],
            vec![BigInt::from(0), BigInt::from(6)],
            vec![BigInt::from(2), BigInt::from(10)],
        ];
        let basis = hermite_reduce(2, &cols);
        assert!(in_lattice(&basis, &[BigInt::from(2), BigInt::from(4)]));
        assert!(in_lattice(&basis, &[BigInt::from(0), BigInt::from(6)]));
        assert!(in_lattice(&basis, &[BigInt::from(4), BigInt::from(14)]));
        assert!(!in_lattice(&basis, &[BigInt::from(1), BigInt::from(0)]));
    }

    #[test]
    fn induced_map_verdicts() {
        // Z --x2--> Z is not surjective
        let a = AbGroupPresentation::new(vec!["a".into()]);
        let b = AbGroupPresentation::new(vec!["b".into()]);
        let double = AbMap::from_generator_images(vec![vec![BigInt::from(2)]]);
        assert_eq!(induced_map_verdict(&double, &a, &b), AbMapVerdict::NotSurjective);
        let ident = AbMap::from_generator_images(vec![vec![BigInt::from(1)]]);
        assert_eq!(induced_map_verdict(&ident, &a, &b), AbMapVerdict::Isomorphism);

        // Z/2 -> Z/4 sending generator to 2: well-defined, not surjective
        let mut z2 = AbGroupPresentation::new(vec!["g".into()]);
        z2.add_relation_i64(&[2]);
        let mut z4 = AbGroupPresentation::new(vec!["h".into()]);
        z4.add_relation_i64(&[4]);
        let m = AbMap::from_generator_images(vec![vec![BigInt::from(2)]]);
        assert_eq!(induced_map_verdict(&m, &z2, &z4), AbMapVerdict::NotSurjective);
        // Z/2 -> Z/4 sending generator to 1 is not well-defined
        let m = AbMap::from_generator_images(vec![vec![BigInt::from(1)]]);
        assert_eq!(induced_map_verdict(&m, &z2, &z4), AbMapVerdict::NotWellDefined);
    }

    #[test]
    fn abelianized_presentation() {
        // <a, b | aba^{-1}b^{-1}, a^2> abelianizes to Z/2 + Z
        let g = GroupPresentation {
            generators: vec!["a".into(), "b".into()],
            relators: vec![
                vec![(0, 1), (1, 1), (0, -1), (1, -1)],
                vec![(0, 1), (0, 1)],
            ],
        };
        let c = g.abelianized().canonical();
        assert_eq!(c.free_rank, 1);
        assert_eq!(c.invariant_factors, vec![BigInt::from(2)]);
    }
}
