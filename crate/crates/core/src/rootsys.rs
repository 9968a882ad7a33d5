//! Finite Cartan matrices, Dynkin classification, positive roots, and the
//! convex enumeration of the positive roots coming from a fixed reduced word
//! for the longest Weyl group element.

use std::fmt;

use crate::{Error, Result};

/// Generalized Cartan matrix. Rows act as coroots: entry `a[i][j]` is
/// `<alpha_j, alpha_i^vee>`, so `s_i(alpha_j) = alpha_j - a[i][j] alpha_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanMatrix {
    a: Vec<Vec<i64>>,
}

impl CartanMatrix {
    pub fn new(a: Vec<Vec<i64>>) -> Result<Self> {
        let theta = a.len();
        for (i, row) in a.iter().enumerate() {
            if row.len() != theta {
                return Err(Error::MalformedCartan {
                    reason: format!("row {} has length {}, expected {}", i + 1, row.len(), theta),
                });
            }
            if row[i] != 2 {
                return Err(Error::MalformedCartan {
                    reason: format!("diagonal entry a_{0}{0} = {1}, must be 2", i + 1, row[i]),
                });
            }
        }
        for i in 0..theta {
            for j in 0..theta {
                if i != j {
                    if a[i][j] > 0 {
                        return Err(Error::MalformedCartan {
                            reason: format!("off-diagonal entry a_{}{} positive", i + 1, j + 1),
                        });
                    }
                    if (a[i][j] == 0) != (a[j][i] == 0) {
                        return Err(Error::MalformedCartan {
                            reason: format!(
                                "a_{}{} = 0 but a_{}{} != 0",
                                i + 1,
                                j + 1,
                                j + 1,
                                i + 1
                            ),
                        });
                    }
                }
            }
        }
        Ok(CartanMatrix { a })
    }

    pub fn theta(&self) -> usize {
        self.a.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.a
    }

    /// Connected components of the Dynkin graph, ordered by smallest vertex,
    /// vertices sorted within each block.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let theta = self.theta();
        let mut seen = vec![false; theta];
        let mut out = Vec::new();
        for start in 0..theta {
            if seen[start] {
                continue;
            }
            let mut block = vec![start];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for u in 0..theta {
                    if !seen[u] && self.a[v][u] != 0 {
                        seen[u] = true;
                        block.push(u);
                        stack.push(u);
                    }
                }
            }
            block.sort_unstable();
            out.push(block);
        }
        out
    }
}

/// Dynkin type of one connected component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DynkinType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(usize),
    F4,
    G2,
}

impl DynkinType {
    pub fn rank(&self) -> usize {
        match *self {
            DynkinType::A(n) | DynkinType::B(n) | DynkinType::C(n) | DynkinType::D(n)
            | DynkinType::E(n) => n,
            DynkinType::F4 => 4,
            DynkinType::G2 => 2,
        }
    }

    /// Number of positive roots of the type.
    pub fn positive_root_count(&self) -> usize {
        match *self {
            DynkinType::A(n) => n * (n + 1) / 2,
            DynkinType::B(n) | DynkinType::C(n) => n * n,
            DynkinType::D(n) => n * (n - 1),
            DynkinType::E(6) => 36,
            DynkinType::E(7) => 63,
            DynkinType::E(8) => 120,
            DynkinType::E(_) => unreachable!(),
            DynkinType::F4 => 24,
            DynkinType::G2 => 6,
        }
    }

    /// Whether the type belongs to the B/C/F family of the lifting lemmas.
    pub fn is_bcf(&self) -> bool {
        matches!(self, DynkinType::B(_) | DynkinType::C(_) | DynkinType::F4)
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::B(n) => write!(f, "B{n}"),
            DynkinType::C(n) => write!(f, "C{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
            DynkinType::F4 => write!(f, "F4"),
            DynkinType::G2 => write!(f, "G2"),
        }
    }
}

/// Classification of one component: the type together with a matching of the
/// component's vertices to the standard diagram ordering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentType {
    pub vertices: Vec<usize>,
    pub dynkin: DynkinType,
    /// vertices listed in the standard diagram order
    pub diagram_order: Vec<usize>,
}

/// Result of finite-type detection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Finite(Vec<ComponentType>),
    NotFinite { component: Vec<usize> },
}

impl Classification {
    pub fn finite(&self) -> Option<&[ComponentType]> {
        match self {
            Classification::Finite(c) => Some(c),
            Classification::NotFinite { .. } => None,
        }
    }
}

/// Per-component finite-type classification of a generalized Cartan matrix.
pub fn classify(a: &CartanMatrix) -> Classification {
    let mut out = Vec::new();
    for block in a.components() {
        match classify_component(a, &block) {
            Some(ct) => out.push(ct),
            None => return Classification::NotFinite { component: block },
        }
    }
    Classification::Finite(out)
}

fn classify_component(a: &CartanMatrix, verts: &[usize]) -> Option<ComponentType> {
    let k = verts.len();
    if k == 1 {
        return Some(ComponentType {
            vertices: verts.to_vec(),
            dynkin: DynkinType::A(1),
            diagram_order: verts.to_vec(),
        });
    }
    // collect edges with multiplicities a_ij * a_ji
    let mut edges = Vec::new();
    let mut degree = vec![0usize; k];
    let idx = |v: usize| verts.iter().position(|&x| x == v).unwrap();
    for (p, &u) in verts.iter().enumerate() {
        for &v in verts.iter().skip(p + 1) {
            let x = a.get(u, v);
            let y = a.get(v, u);
            if x == 0 {
                continue;
            }
            if x < -3 || y < -3 {
                return None;
            }
            let m = x * y;
            if m > 3 {
                return None;
            }
            edges.push((u, v, m));
            degree[idx(u)] += 1;
            degree[idx(v)] += 1;
        }
    }
    if edges.len() != k - 1 {
        return None; // contains a cycle
    }
    if degree.iter().any(|&d| d > 3) {
        return None;
    }
    let branches: Vec<usize> = (0..k).filter(|&i| degree[i] == 3).collect();
    if branches.len() > 1 {
        return None;
    }
    let triple: Vec<_> = edges.iter().filter(|e| e.2 == 3).collect();
    let double: Vec<_> = edges.iter().filter(|e| e.2 == 2).collect();

    if !triple.is_empty() {
        if k != 2 || triple.len() != 1 {
            return None;
        }
        let (u, v, _) = *triple[0];
        // order so that a[first][second] = -1
        let order = if a.get(u, v) == -1 { vec![u, v] } else { vec![v, u] };
        return Some(ComponentType {
            vertices: verts.to_vec(),
            dynkin: DynkinType::G2,
            diagram_order: order,
        });
    }

    if double.len() > 1 {
        return None;
    }

    if !branches.is_empty() {
        // branched diagrams must be simply laced: D or E
        if !double.is_empty() {
            return None;
        }
        let center = verts[branches[0]];
        let mut arms: Vec<Vec<usize>> = Vec::new();
        for &(u, v, _) in &edges {
            let (c, first) = if u == center {
                (u, v)
            } else if v == center {
                (v, u)
            } else {
                continue;
            };
            let _ = c;
            // walk away from the center
            let mut arm = vec![first];
            let mut prev = center;
            let mut cur = first;
            loop {
                let next = verts.iter().copied().find(|&w| {
                    w != prev && w != cur && a.get(cur, w) != 0
                });
                match next {
                    Some(w) => {
                        arm.push(w);
                        prev = cur;
                        cur = w;
                    }
                    None => break,
                }
            }
            arms.push(arm);
        }
        arms.sort_by_key(|arm| arm.len());
        let [l0, l1, l2] = [arms[0].len(), arms[1].len(), arms[2].len()];
        if l0 + l1 + l2 + 1 != k || l0 != 1 {
            return None;
        }
        let dynkin = match (l1, l2) {
            (1, _) => DynkinType::D(k),
            (2, 2) => DynkinType::E(6),
            (2, 3) => DynkinType::E(7),
            (2, 4) => DynkinType::E(8),
            _ => return None,
        };
        // standard order: long arm from its tip to the center, then short arm,
        // then the remaining arm
        let mut order: Vec<usize> = arms[2].iter().rev().copied().collect();
        order.push(center);
        order.extend(arms[1].iter());
        order.extend(arms[0].iter());
        return Some(ComponentType {
            vertices: verts.to_vec(),
            dynkin,
            diagram_order: order,
        });
    }

    // path diagrams: find an endpoint and walk
    let end = verts[(0..k).find(|&i| degree[i] == 1)?];
    let mut path = vec![end];
    let mut prev = usize::MAX;
    let mut cur = end;
    while path.len() < k {
        let next = verts
            .iter()
            .copied()
            .find(|&w| w != cur && w != prev && a.get(cur, w) != 0)?;
        path.push(next);
        prev = cur;
        cur = next;
    }

    if double.is_empty() {
        return Some(ComponentType {
            vertices: verts.to_vec(),
            dynkin: DynkinType::A(k),
            diagram_order: path,
        });
    }

    let (du, dv, _) = *double[0];
    let pos = |v: usize| path.iter().position(|&x| x == v).unwrap();
    let (mut lo, mut hi) = (pos(du), pos(dv));
    if lo > hi {
        std::mem::swap(&mut lo, &mut hi);
    }
    if lo == 0 && hi != k - 1 {
        path.reverse();
        let (a_, b_) = (k - 1 - hi, k - 1 - lo);
        (lo, hi) = (a_, b_);
    }
    if hi == k - 1 {
        // terminal double edge: B (arrow toward the last, short root) or C
        let last = path[k - 1];
        let before = path[k - 2];
        let dynkin = if a.get(last, before) == -2 {
            DynkinType::B(k)
        } else {
            DynkinType::C(k)
        };
        return Some(ComponentType {
            vertices: verts.to_vec(),
            dynkin,
            diagram_order: path,
        });
    }
    // interior double edge: only F4
    if k == 4 && lo == 1 && hi == 2 {
        if a.get(path[2], path[1]) != -2 {
            path.reverse();
        }
        if a.get(path[2], path[1]) == -2 {
            return Some(ComponentType {
                vertices: verts.to_vec(),
                dynkin: DynkinType::F4,
                diagram_order: path,
            });
        }
    }
    None
}

/// Positive roots, a deterministic reduced word for the longest Weyl element,
/// and the convex enumeration it induces.
#[derive(Clone, Debug)]
pub struct RootSystemData {
    pub cartan: CartanMatrix,
    pub components: Vec<ComponentType>,
    pub positive_roots: Vec<Vec<i64>>,
    pub reduced_word: Vec<usize>,
    pub convex_order: Vec<Vec<i64>>,
}

/// Height of a root given by its simple-root coefficients.
pub fn height(beta: &[i64]) -> i64 {
    beta.iter().sum()
}

/// All positive roots by reflection closure from the simple roots.
pub fn positive_roots(a: &CartanMatrix) -> Result<Vec<Vec<i64>>> {
    let theta = a.theta();
    let mut roots: Vec<Vec<i64>> = Vec::new();
    let mut queue: Vec<Vec<i64>> = Vec::new();
    for i in 0..theta {
        let mut e = vec![0i64; theta];
        e[i] = 1;
        roots.push(e.clone());
        queue.push(e);
    }
    while let Some(beta) = queue.pop() {
        for i in 0..theta {
            let c: i64 = (0..theta).map(|j| a.get(i, j) * beta[j]).sum();
            let mut refl = beta.clone();
            refl[i] -= c;
            if refl.iter().all(|&x| x >= 0)
                && refl.iter().any(|&x| x > 0)
                && !roots.contains(&refl)
            {
                roots.push(refl.clone());
                queue.push(refl);
            }
        }
        if roots.len() > 256 {
            return Err(Error::MalformedCartan {
                reason: "root closure does not terminate: matrix not of finite type".into(),
            });
        }
    }
    roots.sort_by_key(|r| (height(r), r.clone()));
    Ok(roots)
}

/// Deterministic reduced word for the longest element: within each component,
/// greedily pick the smallest vertex whose simple root is not yet negative;
/// components are concatenated in the order of their smallest vertices.
pub fn longest_word(a: &CartanMatrix) -> Vec<usize> {
    let theta = a.theta();
    let mut word = Vec::new();
    for block in a.components() {
        // columns[j] = w(alpha_j) for the current w, full theta coordinates
        let mut columns: Vec<Vec<i64>> = (0..theta)
            .map(|j| {
                let mut e = vec![0i64; theta];
                e[j] = 1;
                e
            })
            .collect();
        loop {
            let pick = block
                .iter()
                .copied()
                .find(|&i| columns[i].iter().all(|&x| x >= 0) && columns[i].iter().any(|&x| x > 0));
            let Some(i) = pick else { break };
            word.push(i);
            // w := w s_i, i.e. col_j -= a[i][j] * col_i
            let col_i = columns[i].clone();
            for j in 0..theta {
                let c = a.get(i, j);
                if c != 0 {
                    for (x, y) in columns[j].iter_mut().zip(&col_i) {
                        *x -= c * y;
                    }
                }
            }
        }
    }
    word
}

/// The enumeration `beta_j = s_{i_1} ... s_{i_{j-1}}(alpha_{i_j})`.
pub fn convex_order(a: &CartanMatrix, word: &[usize]) -> Vec<Vec<i64>> {
    let theta = a.theta();
    let mut columns: Vec<Vec<i64>> = (0..theta)
        .map(|j| {
            let mut e = vec![0i64; theta];
            e[j] = 1;
            e
        })
        .collect();
    let mut betas = Vec::with_capacity(word.len());
    for &i in word {
        betas.push(columns[i].clone());
        let col_i = columns[i].clone();
        for j in 0..theta {
            let c = a.get(i, j);
            if c != 0 {
                for (x, y) in columns[j].iter_mut().zip(&col_i) {
                    *x -= c * y;
                }
            }
        }
    }
    betas
}

impl RootSystemData {
    /// Build the full root data for a finite-type matrix.
    pub fn build(a: &CartanMatrix) -> Result<RootSystemData> {
        let components = match classify(a) {
            Classification::Finite(c) => c,
            Classification::NotFinite { component } => {
                return Err(Error::MalformedCartan {
                    reason: format!(
                        "component {:?} is not of finite type",
                        component.iter().map(|v| v + 1).collect::<Vec<_>>()
                    ),
                })
            }
        };
        let roots = positive_roots(a)?;
        let expected: usize = components
            .iter()
            .map(|c| c.dynkin.positive_root_count())
            .sum();
        assert_eq!(roots.len(), expected, "positive root count mismatch");

        let word = longest_word(a);
        assert_eq!(word.len(), roots.len(), "longest word has wrong length");
        let betas = convex_order(a, &word);
        // the enumeration must be a bijection onto the positive roots
        let mut sorted = betas.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), betas.len(), "convex order repeats a root");
        let mut expected_sorted = roots.clone();
        expected_sorted.sort();
        assert_eq!(sorted, expected_sorted, "convex order misses a root");

        Ok(RootSystemData {
            cartan: a.clone(),
            components,
            positive_roots: roots,
            reduced_word: word,
            convex_order: betas,
        })
    }

    /// Index of the component whose vertices support the given root.
    pub fn component_of_root(&self, beta: &[i64]) -> usize {
        let support: Vec<usize> = beta
            .iter()
            .enumerate()
            .filter(|(_, &b)| b != 0)
            .map(|(i, _)| i)
            .collect();
        self.components
            .iter()
            .position(|c| support.iter().all(|v| c.vertices.contains(v)))
            .expect("root support crosses components")
    }
}
