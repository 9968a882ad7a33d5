//! Finite abelian groups given as explicit products of cyclic groups, their
//! elements, characters, and the pairing `<chi, g>`.

use std::fmt;

use crate::exactfield::{gcd, lcm, RootOfUnity};
use crate::{Error, Result};

/// `Gamma = Z/M_1 + ... + Z/M_s`, with the decomposition fixed. Two groups
/// are equal only if their order lists match.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    orders: Vec<u64>,
}

impl AbelianGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        for &m in &orders {
            if m < 2 {
                return Err(Error::MalformedCartan {
                    reason: format!("cyclic factor order {m} must be at least 2"),
                });
            }
        }
        Ok(AbelianGroup { orders })
    }

    /// `(Z/p)^s`.
    pub fn elementary(p: u64, s: usize) -> Self {
        AbelianGroup {
            orders: vec![p; s],
        }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn cardinality(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &m| lcm(acc, m))
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            exponents: vec![0; self.orders.len()],
        }
    }

    pub fn trivial_character(&self) -> Character {
        Character {
            exponents: vec![0; self.orders.len()],
        }
    }

    pub fn element(&self, exponents: &[i64]) -> Result<GroupElement> {
        if exponents.len() != self.orders.len() {
            return Err(Error::LengthMismatch {
                expected: self.orders.len(),
                got: exponents.len(),
            });
        }
        Ok(GroupElement {
            exponents: exponents
                .iter()
                .zip(&self.orders)
                .map(|(&e, &m)| e.rem_euclid(m as i64) as u64)
                .collect(),
        })
    }

    pub fn character(&self, exponents: &[i64]) -> Result<Character> {
        Ok(Character {
            exponents: self.element(exponents)?.exponents,
        })
    }

    fn check_member(&self, exps: &[u64]) -> Result<()> {
        if exps.len() != self.orders.len() {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            exponents: a
                .exponents
                .iter()
                .zip(&b.exponents)
                .zip(&self.orders)
                .map(|((&x, &y), &m)| (x + y) % m)
                .collect(),
        }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement {
            exponents: a
                .exponents
                .iter()
                .zip(&self.orders)
                .map(|(&x, &m)| (m - x) % m)
                .collect(),
        }
    }

    pub fn scalar_mul(&self, k: i64, a: &GroupElement) -> GroupElement {
        GroupElement {
            exponents: a
                .exponents
                .iter()
                .zip(&self.orders)
                .map(|(&x, &m)| ((x as i128 * k as i128).rem_euclid(m as i128)) as u64)
                .collect(),
        }
    }

    pub fn mul_chars(&self, a: &Character, b: &Character) -> Character {
        Character {
            exponents: a
                .exponents
                .iter()
                .zip(&b.exponents)
                .zip(&self.orders)
                .map(|((&x, &y), &m)| (x + y) % m)
                .collect(),
        }
    }

    pub fn inv_char(&self, a: &Character) -> Character {
        Character {
            exponents: a
                .exponents
                .iter()
                .zip(&self.orders)
                .map(|(&x, &m)| (m - x) % m)
                .collect(),
        }
    }

    pub fn char_pow(&self, a: &Character, k: i64) -> Character {
        Character {
            exponents: a
                .exponents
                .iter()
                .zip(&self.orders)
                .map(|(&x, &m)| ((x as i128 * k as i128).rem_euclid(m as i128)) as u64)
                .collect(),
        }
    }

    /// The pairing `<chi, g> = zeta_L^{sum_h (L/M_h) c_h e_h}` with
    /// `L = lcm(M_h)`. Bilinear in both arguments.
    pub fn pair(&self, chi: &Character, g: &GroupElement) -> Result<RootOfUnity> {
        self.check_member(&chi.exponents)?;
        self.check_member(&g.exponents)?;
        let l = self.exponent();
        let mut e: u128 = 0;
        for ((&c, &x), &m) in chi.exponents.iter().zip(&g.exponents).zip(&self.orders) {
            e += (l / m) as u128 * c as u128 * x as u128;
        }
        Ok(RootOfUnity::new(l, (e % l as u128) as i64))
    }

    /// Smallest `n >= 1` with `n * g = 0`.
    pub fn element_order(&self, g: &GroupElement) -> u64 {
        g.exponents
            .iter()
            .zip(&self.orders)
            .fold(1, |acc, (&e, &m)| lcm(acc, m / gcd(e, m)))
    }

    pub fn character_order(&self, chi: &Character) -> u64 {
        self.element_order(&GroupElement {
            exponents: chi.exponents.clone(),
        })
    }

    /// All elements, lexicographic in the exponent vectors, subject to a
    /// cardinality budget.
    pub fn enumerate_elements(&self, budget: u64) -> Result<Vec<GroupElement>> {
        let n = self.cardinality();
        if n > budget {
            return Err(Error::BudgetExceeded {
                needed: n,
                budget,
            });
        }
        let mut out = Vec::with_capacity(n as usize);
        let mut cur = vec![0u64; self.orders.len()];
        loop {
            out.push(GroupElement {
                exponents: cur.clone(),
            });
            // lexicographic increment, most significant coordinate first
            let mut i = self.orders.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < self.orders[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    pub fn enumerate_characters(&self, budget: u64) -> Result<Vec<Character>> {
        Ok(self
            .enumerate_elements(budget)?
            .into_iter()
            .map(|g| Character {
                exponents: g.exponents,
            })
            .collect())
    }
}

/// Element of the group, exponent vector reduced componentwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    exponents: Vec<u64>,
}

impl GroupElement {
    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn is_identity(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Character of the group, also an exponent vector: `<chi, Y_h> = zeta_{M_h}^{c_h}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    exponents: Vec<u64>,
}

impl Character {
    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_examples() {
        let g33 = AbelianGroup::elementary(3, 2);
        // disjoint support pairs to 1
        let chi = g33.character(&[0, 1]).unwrap();
        let g = g33.element(&[1, 0]).unwrap();
        assert!(g33.pair(&chi, &g).unwrap().is_one());

        // generator pairing in Z/3
        let g3 = AbelianGroup::elementary(3, 1);
        let chi = g3.character(&[1]).unwrap();
        let g = g3.element(&[1]).unwrap();
        assert_eq!(g3.pair(&chi, &g).unwrap(), RootOfUnity::new(3, 1));

        // exponent arithmetic mod 3: 1*2 + 2*2 = 6 = 0 mod 3
        let chi = g33.character(&[1, 2]).unwrap();
        let g = g33.element(&[2, 2]).unwrap();
        assert!(g33.pair(&chi, &g).unwrap().is_one());
    }

    #[test]
    fn element_order_examples() {
        let g33 = AbelianGroup::elementary(3, 2);
        assert_eq!(g33.element_order(&g33.identity()), 1);
        assert_eq!(g33.element_order(&g33.element(&[1, 0]).unwrap()), 3);

        let g = AbelianGroup::new(vec![4, 9]).unwrap();
        assert_eq!(g.element_order(&g.element(&[2, 3]).unwrap()), 6);
    }

    #[test]
    fn enumeration_examples() {
        let g2 = AbelianGroup::elementary(2, 1);
        let els = g2.enumerate_elements(1000).unwrap();
        assert_eq!(els.len(), 2);
        assert!(els[0].is_identity());

        let g3 = AbelianGroup::elementary(3, 1);
        assert_eq!(g3.enumerate_elements(1000).unwrap().len(), 3);

        let g33 = AbelianGroup::elementary(3, 2);
        let els = g33.enumerate_elements(1000).unwrap();
        assert_eq!(els.len(), 9);
        assert_eq!(els[0].exponents(), &[0, 0]);
        assert_eq!(els[8].exponents(), &[2, 2]);

        assert!(matches!(
            g33.enumerate_elements(4),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn pairing_nondegenerate_small_groups() {
        for group in [
            AbelianGroup::elementary(3, 2),
            AbelianGroup::new(vec![4, 9]).unwrap(),
            AbelianGroup::new(vec![2, 2, 5]).unwrap(),
        ] {
            assert!(group.cardinality() <= 200);
            let chars = group.enumerate_characters(200).unwrap();
            for g in group.enumerate_elements(200).unwrap() {
                if g.is_identity() {
                    continue;
                }
                assert!(
                    chars
                        .iter()
                        .any(|chi| !group.pair(chi, &g).unwrap().is_one()),
                    "degenerate pairing at {g}"
                );
            }
        }
    }

    #[test]
    fn order_divides_exponent() {
        let group = AbelianGroup::new(vec![4, 6, 9]).unwrap();
        for g in group.enumerate_elements(1000).unwrap() {
            assert_eq!(group.exponent() % group.element_order(&g), 0);
        }
    }
}
