//! Diagonal braiding matrices over finite abelian groups: construction from
//! group data, Cartan-type detection, component bookkeeping, bicharacter
//! twists, and the symmetric normal form `b_ij = q^{d_i a_ij}`.

use crate::abelian::{AbelianGroup, Character, GroupElement};
use crate::exactfield::RootOfUnity;
use crate::rootsys::{classify, CartanMatrix, Classification, ComponentType};
use crate::{Error, Result};

/// Square matrix of roots of unity `b_ij`, the braiding of a diagonal
/// Yetter-Drinfeld module with basis vectors of degrees `(g_i, chi_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidingMatrix {
    b: Vec<Vec<RootOfUnity>>,
}

impl BraidingMatrix {
    pub fn new(b: Vec<Vec<RootOfUnity>>) -> Result<Self> {
        let theta = b.len();
        for row in &b {
            if row.len() != theta {
                return Err(Error::LengthMismatch {
                    expected: theta,
                    got: row.len(),
                });
            }
        }
        Ok(BraidingMatrix { b })
    }

    /// `b_ij = <chi_j, g_i>`.
    pub fn from_datum(
        group: &AbelianGroup,
        gs: &[GroupElement],
        chis: &[Character],
    ) -> Result<Self> {
        if gs.len() != chis.len() {
            return Err(Error::LengthMismatch {
                expected: gs.len(),
                got: chis.len(),
            });
        }
        let mut b = Vec::with_capacity(gs.len());
        for g in gs {
            let mut row = Vec::with_capacity(chis.len());
            for chi in chis {
                row.push(group.pair(chi, g)?);
            }
            b.push(row);
        }
        Ok(BraidingMatrix { b })
    }

    /// `b_ij = q^{d_i a_ij}`.
    pub fn from_fl(q: RootOfUnity, cartan: &CartanMatrix, d: &[i64]) -> Result<Self> {
        if d.len() != cartan.theta() {
            return Err(Error::LengthMismatch {
                expected: cartan.theta(),
                got: d.len(),
            });
        }
        let theta = cartan.theta();
        let b = (0..theta)
            .map(|i| {
                (0..theta)
                    .map(|j| q.pow(d[i] * cartan.get(i, j)))
                    .collect()
            })
            .collect();
        Ok(BraidingMatrix { b })
    }

    pub fn theta(&self) -> usize {
        self.b.len()
    }

    pub fn get(&self, i: usize, j: usize) -> RootOfUnity {
        self.b[i][j]
    }

    /// Order of the diagonal entry `b_ii`.
    pub fn diagonal_order(&self, i: usize) -> u64 {
        self.b[i][i].order()
    }

    pub fn is_symmetric(&self) -> bool {
        let theta = self.theta();
        (0..theta).all(|i| (i + 1..theta).all(|j| self.b[i][j] == self.b[j][i]))
    }
}

/// Outcome of Cartan-type detection: either the integer matrix or the first
/// position (row-major) where no admissible entry exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CartanTypeResult {
    Cartan(CartanMatrix),
    NotCartan { i: usize, j: usize },
}

impl CartanTypeResult {
    pub fn cartan(&self) -> Option<&CartanMatrix> {
        match self {
            CartanTypeResult::Cartan(a) => Some(a),
            CartanTypeResult::NotCartan { .. } => None,
        }
    }
}

/// Find the unique `a_ij` in `(-ord b_ii, 0]` with `b_ij b_ji = b_ii^{a_ij}`,
/// for all off-diagonal pairs. Requires `b_ii != 1` for every vertex; the
/// failing position is reported as a value, not an error.
pub fn detect_cartan(b: &BraidingMatrix) -> CartanTypeResult {
    let theta = b.theta();
    let mut a = vec![vec![0i64; theta]; theta];
    for i in 0..theta {
        if b.get(i, i).is_one() {
            return CartanTypeResult::NotCartan { i, j: i };
        }
        a[i][i] = 2;
    }
    for i in 0..theta {
        let n = b.diagonal_order(i);
        for j in 0..theta {
            if i == j {
                continue;
            }
            let prod = b.get(i, j).mul(b.get(j, i));
            let Some(m) = prod.log_in_base(b.get(i, i)) else {
                return CartanTypeResult::NotCartan { i, j };
            };
            a[i][j] = if m == 0 { 0 } else { m as i64 - n as i64 };
        }
    }
    match CartanMatrix::new(a) {
        Ok(m) => CartanTypeResult::Cartan(m),
        // a_ij = 0 while a_ji != 0 can happen when the diagonal orders differ
        Err(_) => CartanTypeResult::NotCartan { i: 0, j: 0 },
    }
}

/// Connected components of the detected Dynkin diagram together with the
/// common diagonal order `N_I` of each component.
#[derive(Clone, Debug)]
pub struct ComponentStructure {
    pub components: Vec<ComponentType>,
    /// `N_I = ord b_ii` for the vertices of each component
    pub orders: Vec<u64>,
}

impl ComponentStructure {
    /// Component index of a vertex.
    pub fn component_of(&self, vertex: usize) -> usize {
        self.components
            .iter()
            .position(|c| c.vertices.contains(&vertex))
            .expect("vertex outside all components")
    }
}

/// Validate that the Cartan matrix is of finite type and that `ord b_ii` is
/// constant on every connected component.
pub fn components_of(b: &BraidingMatrix, cartan: &CartanMatrix) -> Result<ComponentStructure> {
    let components = match classify(cartan) {
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
    let mut orders = Vec::with_capacity(components.len());
    for comp in &components {
        let n = b.diagonal_order(comp.vertices[0]);
        for &v in &comp.vertices[1..] {
            if b.diagonal_order(v) != n {
                return Err(Error::InconsistentComponent {
                    i: comp.vertices[0],
                    j: v,
                });
            }
        }
        orders.push(n);
    }
    Ok(ComponentStructure { components, orders })
}

/// Twist by a matrix of roots of unity: `b'_ij = w_ij w_ji^{-1} b_ij`.
/// Diagonal entries are unchanged, so the Cartan data is preserved.
pub fn twist_braiding(b: &BraidingMatrix, omega: &[Vec<RootOfUnity>]) -> Result<BraidingMatrix> {
    let theta = b.theta();
    if omega.len() != theta || omega.iter().any(|r| r.len() != theta) {
        return Err(Error::LengthMismatch {
            expected: theta,
            got: omega.len(),
        });
    }
    let twisted = (0..theta)
        .map(|i| {
            (0..theta)
                .map(|j| omega[i][j].mul(omega[j][i].inv()).mul(b.get(i, j)))
                .collect()
        })
        .collect();
    Ok(BraidingMatrix { b: twisted })
}

/// Replace each off-diagonal pair by the odd square root of `b_ij b_ji`,
/// producing a twist-equivalent symmetric braiding. Fails if some product
/// has even order.
pub fn symmetrize(b: &BraidingMatrix) -> Result<BraidingMatrix> {
    let theta = b.theta();
    let mut out = b.b.clone();
    for i in 0..theta {
        for j in i + 1..theta {
            let prod = b.get(i, j).mul(b.get(j, i));
            let root = prod
                .sqrt_odd()
                .ok_or(Error::UnsupportedBraiding { i, j })?;
            out[i][j] = root;
            out[j][i] = root;
        }
    }
    Ok(BraidingMatrix { b: out })
}

/// Symmetrizing integers of a finite-type Cartan matrix: the unique
/// `d_i` with `d_i a_ij = d_j a_ji` and minimum 1 on every component.
pub fn fl_symmetrizers(cartan: &CartanMatrix) -> Result<Vec<i64>> {
    let theta = cartan.theta();
    // propagate the ratio d_j / d_i = a_ij / a_ji along edges, with
    // numerator/denominator bookkeeping in integers
    let mut num = vec![0i64; theta];
    let mut den = vec![0i64; theta];
    for block in cartan.components() {
        num[block[0]] = 1;
        den[block[0]] = 1;
        let mut stack = vec![block[0]];
        while let Some(i) = stack.pop() {
            for &j in &block {
                if den[j] == 0 && cartan.get(i, j) != 0 {
                    // d_j / d_i = a_ij / a_ji, a positive ratio
                    num[j] = num[i] * cartan.get(i, j).abs();
                    den[j] = den[i] * cartan.get(j, i).abs();
                    stack.push(j);
                }
            }
        }
        // clear denominators within the component, then normalize min to 1
        let scale: i64 = block
            .iter()
            .fold(1, |acc, &v| acc / gcd_i64(acc, den[v]) * den[v]);
        let vals: Vec<i64> = block.iter().map(|&v| num[v] * (scale / den[v])).collect();
        let g = vals.iter().fold(0, |acc, &v| gcd_i64(acc, v));
        for (&v, val) in block.iter().zip(&vals) {
            num[v] = val / g;
            den[v] = 1;
        }
        let min = block.iter().map(|&v| num[v]).min().unwrap();
        if min != 1 {
            return Err(Error::MalformedCartan {
                reason: format!("symmetrizers {:?} do not normalize to minimum 1", num),
            });
        }
        for &v in &block {
            if !(1..=3).contains(&num[v]) {
                return Err(Error::MalformedCartan {
                    reason: format!("symmetrizer {} outside 1..3 at vertex {}", num[v], v + 1),
                });
            }
        }
    }
    Ok(num)
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Symmetric normal form of a braiding: a root of unity `q` and symmetrizers
/// `d_i` with `b_ij = q^{d_i a_ij}` throughout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlForm {
    Fl {
        q: RootOfUnity,
        d: Vec<i64>,
        cartan: CartanMatrix,
    },
    NotFl { reason: String },
}

/// Recognize `b_ij = q^{d_i a_ij}`. The candidate `q` is the odd square root
/// of `b_ii` at a vertex with `d_i = 1`; every entry is then checked.
pub fn fl_normal_form(b: &BraidingMatrix) -> Result<FlForm> {
    let cartan = match detect_cartan(b) {
        CartanTypeResult::Cartan(a) => a,
        CartanTypeResult::NotCartan { i, j } => {
            return Ok(FlForm::NotFl {
                reason: format!("not of Cartan type at ({},{})", i + 1, j + 1),
            })
        }
    };
    if !b.is_symmetric() {
        return Ok(FlForm::NotFl {
            reason: "braiding is not symmetric".into(),
        });
    }
    let d = fl_symmetrizers(&cartan)?;
    let pivot = (0..b.theta())
        .find(|&i| d[i] == 1)
        .expect("symmetrizers always contain 1");
    let Some(q) = b.get(pivot, pivot).sqrt_odd() else {
        return Ok(FlForm::NotFl {
            reason: format!("diagonal entry at vertex {} has even order", pivot + 1),
        });
    };
    for i in 0..b.theta() {
        for j in 0..b.theta() {
            if b.get(i, j) != q.pow(d[i] * cartan.get(i, j)) {
                return Ok(FlForm::NotFl {
                    reason: format!("entry ({},{}) is not q^(d_i a_ij)", i + 1, j + 1),
                });
            }
        }
    }
    Ok(FlForm::Fl { q, d, cartan })
}
