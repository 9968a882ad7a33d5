//! Graded dimensions of Nichols algebras of diagonal type.
//!
//! Degree `n` of the Nichols algebra is the image of the quantum symmetrizer
//! `S_n` on the `n`-th braided tensor power, so its dimension is an exact
//! matrix rank. `S_n` preserves the multidegree of a word, which splits the
//! computation into small blocks, and the coset factorization
//! `S_n = (S_{n-1} (x) id) R_n` with `R_n = sum_k c_{n-1} ... c_k` builds
//! each block from the blocks one degree lower.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::braiding::BraidingMatrix;
use crate::exactfield::{lcm, CycloNum, ExactMatrix, RootOfUnity};
use crate::rootsys::RootSystemData;
use crate::{Error, Result};

/// Dimensions by degree, starting at degree 0.
pub type GradedDims = Vec<u64>;

type Word = Vec<u8>;

/// One multidegree block of the quantum symmetrizer: the words carrying the
/// multidegree (lex sorted) and the columns of `S_n` on them.
struct Block {
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    /// columns[j] = coefficients of S_n(words[j]) over `words`
    columns: Vec<Vec<CycloNum>>,
}

fn words_of_multidegree(m: &[u32]) -> Vec<Word> {
    let n: u32 = m.iter().sum();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n as usize);
    let mut rem = m.to_vec();
    fn go(rem: &mut [u32], cur: &mut Word, left: u32, out: &mut Vec<Word>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in 0..rem.len() {
            if rem[i] > 0 {
                rem[i] -= 1;
                cur.push(i as u8);
                go(rem, cur, left - 1, out);
                cur.pop();
                rem[i] += 1;
            }
        }
    }
    go(&mut rem, &mut cur, n, &mut out);
    out
}

fn multidegrees(theta: usize, n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; theta];
    fn go(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for k in (0..=left).rev() {
            cur[pos] = k;
            go(pos + 1, left - k, cur, out);
        }
        cur[pos] = 0;
    }
    if theta > 0 {
        go(0, n, &mut cur, &mut out);
    }
    out
}

fn build_block(
    b: &BraidingMatrix,
    conductor: u64,
    m: &[u32],
    prev: &HashMap<Vec<u32>, Block>,
) -> Block {
    let words = words_of_multidegree(m);
    let index: HashMap<Word, usize> = words
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, w)| (w, i))
        .collect();
    let n: u32 = m.iter().sum();
    let dim = words.len();

    if n == 1 {
        return Block {
            columns: vec![vec![CycloNum::one(conductor)]],
            words,
            index,
        };
    }

    let mut columns = Vec::with_capacity(dim);
    for w in &words {
        let mut col = vec![CycloNum::zero(conductor); dim];
        for k in 0..n as usize {
            // c_{n-1} ... c_{k+1} moves the letter at position k to the end,
            // braiding past everything to its right
            let mut scalar = RootOfUnity::one();
            for l in k + 1..n as usize {
                scalar = scalar.mul(b.get(w[k] as usize, w[l] as usize));
            }
            let mut moved = Vec::with_capacity(n as usize - 1);
            moved.extend_from_slice(&w[..k]);
            moved.extend_from_slice(&w[k + 1..]);
            let last = w[k];

            let mut sub_m = m.to_vec();
            sub_m[last as usize] -= 1;
            let sub = &prev[&sub_m];
            let scalar_c = scalar.embed(conductor).expect("conductor covers braiding");
            for (r, coeff) in sub.columns[sub.index[&moved]].iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                let mut target = sub.words[r].clone();
                target.push(last);
                let row = index[&target];
                col[row] = col[row].add(&coeff.mul(&scalar_c));
            }
        }
        columns.push(col);
    }
    Block {
        words,
        index,
        columns,
    }
}

fn braiding_conductor(b: &BraidingMatrix) -> u64 {
    let theta = b.theta();
    let mut l = 1;
    for i in 0..theta {
        for j in 0..theta {
            l = lcm(l, b.get(i, j).order());
        }
    }
    l
}

fn check_budget(theta: usize, n: u32, budget: u64) -> Result<()> {
    let needed = (theta as u128).pow(n);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded {
            needed: needed.min(u64::MAX as u128) as u64,
            budget,
        });
    }
    Ok(())
}

fn blocks_of_degree(
    b: &BraidingMatrix,
    conductor: u64,
    n: u32,
    prev: &HashMap<Vec<u32>, Block>,
) -> HashMap<Vec<u32>, Block> {
    multidegrees(b.theta(), n)
        .into_par_iter()
        .map(|m| {
            let block = build_block(b, conductor, &m, prev);
            (m, block)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// Graded dimensions of the Nichols algebra of the braiding, degrees
/// `0..=max_degree`. The budget bounds the tensor power dimension
/// `theta^n` handled at each degree.
pub fn nichols_dims(b: &BraidingMatrix, max_degree: u32, budget: u64) -> Result<GradedDims> {
    check_budget(b.theta(), max_degree, budget)?;
    let conductor = braiding_conductor(b);
    let mut dims: GradedDims = vec![1];
    let mut prev: HashMap<Vec<u32>, Block> = HashMap::new();
    for n in 1..=max_degree {
        let blocks = blocks_of_degree(b, conductor, n, &prev);
        let mut keys: Vec<&Vec<u32>> = blocks.keys().collect();
        keys.sort();
        let ranks: Vec<usize> = keys
            .par_iter()
            .map(|m| {
                let block = &blocks[*m];
                ExactMatrix::from_rows(block.columns.clone())
                    .expect("square block")
                    .rank()
            })
            .collect();
        dims.push(ranks.iter().map(|&r| r as u64).sum());
        prev = blocks;
    }
    Ok(dims)
}

/// Element of the free braided tensor algebra: a finite sum of scaled words.
#[derive(Clone, Debug)]
pub struct TensorElem {
    conductor: u64,
    terms: HashMap<Word, CycloNum>,
}

impl TensorElem {
    pub fn zero(conductor: u64) -> Self {
        TensorElem {
            conductor,
            terms: HashMap::new(),
        }
    }

    /// The generator `x_i` in degree 1.
    pub fn generator(conductor: u64, i: usize) -> Self {
        let mut terms = HashMap::new();
        terms.insert(vec![i as u8], CycloNum::one(conductor));
        TensorElem { conductor, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.is_zero())
    }

    /// Add `c` times the given word.
    pub fn add_term(&mut self, w: Vec<u8>, c: CycloNum) {
        self.insert(w, c);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &CycloNum)> {
        self.terms.iter().filter(|(_, c)| !c.is_zero())
    }

    fn insert(&mut self, w: Word, c: CycloNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(old) => *old = old.add(&c),
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add(&self, other: &TensorElem) -> TensorElem {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.insert(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TensorElem) -> TensorElem {
        self.add(&other.negate())
    }

    fn negate(&self) -> TensorElem {
        TensorElem {
            conductor: self.conductor,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &CycloNum) -> TensorElem {
        let mut out = TensorElem::zero(self.conductor);
        for (w, coeff) in self.terms() {
            out.insert(w.clone(), coeff.mul(c));
        }
        out
    }

    pub fn scale_root(&self, r: RootOfUnity) -> TensorElem {
        let c = r.embed(self.conductor).expect("conductor covers scalar");
        self.scale(&c)
    }

    /// Concatenation product of the tensor algebra.
    pub fn mul(&self, other: &TensorElem) -> TensorElem {
        let mut out = TensorElem::zero(self.conductor);
        for (w, c) in self.terms() {
            for (v, d) in other.terms() {
                let mut wv = w.clone();
                wv.extend_from_slice(v);
                out.insert(wv, c.mul(d));
            }
        }
        out
    }
}

/// Braided commutator `[u, v]_c = uv - b(u, v) vu`, with the braiding scalar
/// computed per word pair from the letters.
pub fn bracket_c(b: &BraidingMatrix, u: &TensorElem, v: &TensorElem) -> TensorElem {
    let conductor = u.conductor;
    let mut out = TensorElem::zero(conductor);
    for (w, c) in u.terms() {
        for (x, d) in v.terms() {
            let mut wx = w.clone();
            wx.extend_from_slice(x);
            out.insert(wx, c.mul(d));

            let mut scalar = RootOfUnity::one();
            for &i in w {
                for &j in x {
                    scalar = scalar.mul(b.get(i as usize, j as usize));
                }
            }
            let mut xw = x.clone();
            xw.extend_from_slice(w);
            let coeff = c
                .mul(d)
                .mul(&scalar.embed(conductor).expect("conductor covers braiding"))
                .neg();
            out.insert(xw, coeff);
        }
    }
    out
}

/// `(ad_c x_i)^k (v)` by iterating the braided commutator with `x_i`.
pub fn ad_c_power(b: &BraidingMatrix, i: usize, k: u32, v: &TensorElem) -> TensorElem {
    let xi = TensorElem::generator(v.conductor, i);
    let mut out = v.clone();
    for _ in 0..k {
        out = bracket_c(b, &xi, &out);
    }
    out
}

/// The left-hand side of the quantum Serre relation,
/// `(ad_c x_i)^{1 - a_ij} (x_j)`.
pub fn serre_element(
    b: &BraidingMatrix,
    cartan_ij: i64,
    i: usize,
    j: usize,
    conductor: u64,
) -> TensorElem {
    let xj = TensorElem::generator(conductor, j);
    ad_c_power(b, i, (1 - cartan_ij) as u32, &xj)
}

/// Whether the element maps to zero under the quantum symmetrizer, i.e.
/// vanishes in the Nichols algebra. Each homogeneous part is checked
/// separately since the symmetrizer is graded.
pub fn vanishes_in_nichols(b: &BraidingMatrix, elem: &TensorElem, budget: u64) -> Result<bool> {
    let conductor = lcm(braiding_conductor(b), elem.conductor);
    // group terms by multidegree
    let mut by_degree: HashMap<Vec<u32>, Vec<(&Word, &CycloNum)>> = HashMap::new();
    let mut max_n = 0u32;
    for (w, c) in elem.terms() {
        let mut m = vec![0u32; b.theta()];
        for &i in w {
            m[i as usize] += 1;
        }
        max_n = max_n.max(w.len() as u32);
        by_degree.entry(m).or_default().push((w, c));
    }
    if by_degree.is_empty() {
        return Ok(true);
    }
    check_budget(b.theta(), max_n, budget)?;

    // build block layers up to the maximal degree; the recursion needs the
    // full lower layers anyway
    let empty = HashMap::new();
    let mut layers: Vec<HashMap<Vec<u32>, Block>> = Vec::new();
    for n in 1..=max_n {
        let blocks = {
            let prev = layers.last().unwrap_or(&empty);
            blocks_of_degree(b, conductor, n, prev)
        };
        layers.push(blocks);
    }

    for (m, group) in &by_degree {
        let n: u32 = m.iter().sum();
        let block = &layers[n as usize - 1][m];
        let mut image = vec![CycloNum::zero(conductor); block.words.len()];
        for (w, c) in group {
            let c = c.lift(conductor).expect("conductor covers coefficients");
            for (row, entry) in block.columns[block.index[*w]].iter().enumerate() {
                image[row] = image[row].add(&entry.mul(&c));
            }
        }
        if image.iter().any(|x| !x.is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Hilbert series of the PBW basis: product over positive roots `alpha` of
/// `(1 - t^{N ht}) / (1 - t^{ht})` with `N` the diagonal order of the
/// component supporting `alpha`, truncated at `max_degree`.
pub fn pbw_hilbert_series(
    data: &RootSystemData,
    orders: &[u64],
    max_degree: usize,
) -> Result<Vec<u64>> {
    if orders.len() != data.components.len() {
        return Err(Error::LengthMismatch {
            expected: data.components.len(),
            got: orders.len(),
        });
    }
    let mut series = vec![0u64; max_degree + 1];
    series[0] = 1;
    for beta in &data.positive_roots {
        let ht = crate::rootsys::height(beta) as usize;
        let n = orders[data.component_of_root(beta)];
        let mut next = vec![0u64; max_degree + 1];
        for (d, &coeff) in series.iter().enumerate() {
            if coeff == 0 {
                continue;
            }
            let mut k = 0u64;
            while k < n && d + (k as usize) * ht <= max_degree {
                next[d + k as usize * ht] += coeff;
                k += 1;
            }
        }
        series = next;
    }
    Ok(series)
}

/// Total PBW dimension `prod_I N_I^{|Phi_I^+|}`.
pub fn pbw_total_dimension(data: &RootSystemData, orders: &[u64]) -> Result<u128> {
    if orders.len() != data.components.len() {
        return Err(Error::LengthMismatch {
            expected: data.components.len(),
            got: orders.len(),
        });
    }
    let mut total: u128 = 1;
    for (comp, &n) in data.components.iter().zip(orders) {
        total *= (n as u128).pow(comp.dynkin.positive_root_count() as u32);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::CartanMatrix;

    fn z(order: u64, exp: i64) -> RootOfUnity {
        RootOfUnity::new(order, exp)
    }

    fn rank_one(order: u64) -> BraidingMatrix {
        BraidingMatrix::new(vec![vec![z(order, 1)]]).unwrap()
    }

    #[test]
    fn rank_one_truncates_at_order() {
        for n in [3u64, 5, 7] {
            let b = rank_one(n);
            let dims = nichols_dims(&b, (n + 1) as u32, 1 << 16).unwrap();
            let expected: Vec<u64> = (0..=(n + 1))
                .map(|d| if d < n { 1 } else { 0 })
                .collect();
            assert_eq!(dims, expected, "order {n}");
        }
    }

    #[test]
    fn a1_a1_product_dims() {
        let b = BraidingMatrix::new(vec![
            vec![z(3, 1), z(1, 0)],
            vec![z(1, 0), z(3, 1)],
        ])
        .unwrap();
        let dims = nichols_dims(&b, 4, 1 << 16).unwrap();
        assert_eq!(dims, vec![1, 2, 3, 2, 1]);
        assert_eq!(dims.iter().sum::<u64>(), 9);
    }

    #[test]
    fn a2_at_third_root() {
        let a = CartanMatrix::new(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        let b = BraidingMatrix::from_fl(z(3, 1), &a, &[1, 1]).unwrap();
        let dims = nichols_dims(&b, 8, 1 << 16).unwrap();
        assert_eq!(dims, vec![1, 2, 4, 4, 5, 4, 4, 2, 1]);
        assert_eq!(dims.iter().sum::<u64>(), 27);
    }

    #[test]
    fn budget_is_enforced() {
        let b = BraidingMatrix::new(vec![
            vec![z(3, 1), z(1, 0)],
            vec![z(1, 0), z(3, 1)],
        ])
        .unwrap();
        assert!(matches!(
            nichols_dims(&b, 20, 1 << 16),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn pbw_series_a2() {
        let a = CartanMatrix::new(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        let data = RootSystemData::build(&a).unwrap();
        let series = pbw_hilbert_series(&data, &[3], 8).unwrap();
        assert_eq!(series, vec![1, 2, 4, 4, 5, 4, 4, 2, 1]);
        assert_eq!(pbw_total_dimension(&data, &[3]).unwrap(), 27);
    }

    #[test]
    fn pbw_series_rank_one() {
        let a = CartanMatrix::new(vec![vec![2]]).unwrap();
        let data = RootSystemData::build(&a).unwrap();
        assert_eq!(
            pbw_hilbert_series(&data, &[5], 6).unwrap(),
            vec![1, 1, 1, 1, 1, 0, 0]
        );
    }

    #[test]
    fn serre_relation_vanishes_for_a2() {
        let a = CartanMatrix::new(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        let b = BraidingMatrix::from_fl(z(3, 1), &a, &[1, 1]).unwrap();
        let rel = serre_element(&b, a.get(0, 1), 0, 1, 3);
        assert!(vanishes_in_nichols(&b, &rel, 1 << 16).unwrap());
        let rel = serre_element(&b, a.get(1, 0), 1, 0, 3);
        assert!(vanishes_in_nichols(&b, &rel, 1 << 16).unwrap());
    }

    #[test]
    fn power_relation_rank_one() {
        for n in [3u64, 5] {
            let b = rank_one(n);
            let x = TensorElem::generator(n, 0);
            let mut pow = x.clone();
            for _ in 1..n {
                pow = pow.mul(&x);
            }
            assert!(vanishes_in_nichols(&b, &pow, 1 << 16).unwrap(), "x^{n}");
            let mut low = x.clone();
            for _ in 2..n {
                low = low.mul(&x);
            }
            assert!(!vanishes_in_nichols(&b, &low, 1 << 16).unwrap());
        }
    }

    #[test]
    fn bracket_c_expands_commutator() {
        let a = CartanMatrix::new(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        let b = BraidingMatrix::from_fl(z(3, 1), &a, &[1, 1]).unwrap();
        let x1 = TensorElem::generator(3, 0);
        let x2 = TensorElem::generator(3, 1);
        let br = bracket_c(&b, &x1, &x2);
        let terms: HashMap<Word, CycloNum> =
            br.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        assert_eq!(terms.len(), 2);
        assert!(terms[&vec![0u8, 1]].is_one());
        // coefficient of x2 x1 is -b_12
        let expected = b.get(0, 1).embed(3).unwrap().neg();
        assert_eq!(terms[&vec![1u8, 0]], expected);
    }
}
