//! The smash free algebra `kGamma<a_1,...,a_theta>` in the normal form
//! `g * word`, braided commutators and root vectors, relation sets for the
//! Nichols algebra and the lifted algebra, and a truncated ideal elimination
//! that bounds the dimension of the quotient degree by degree.

use std::collections::{BTreeMap, HashMap};

use crate::abelian::{Character, GroupElement};
use crate::exactfield::{lcm, CycloNum, RootOfUnity};
use crate::linking::{Datum, LinkingDatum};
use crate::nichols::TensorElem;
use crate::rootsys::{height, RootSystemData};
use crate::{Error, Result};

type Word = Vec<u8>;

/// Element of the smash free algebra: a sum of terms `c * g * a_{w_1} ... a_{w_n}`
/// with the group element on the left. The commutation rule
/// `y a_j = chi_j(y) a_j y` pushes group letters left during multiplication.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgElem {
    terms: BTreeMap<(GroupElement, Word), CycloNum>,
}

/// Yetter-Drinfeld bidegree of a bihomogeneous element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YDBidegree {
    pub grp: GroupElement,
    pub chr: Character,
}

impl AlgElem {
    pub fn zero() -> Self {
        AlgElem {
            terms: BTreeMap::new(),
        }
    }

    pub fn one(d: &Datum) -> Self {
        AlgElem::group_element(d, d.group.identity())
    }

    pub fn group_element(d: &Datum, h: GroupElement) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((h, Vec::new()), CycloNum::one(d.conductor()));
        AlgElem { terms }
    }

    /// The generator `a_i`.
    pub fn generator(d: &Datum, i: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(
            (d.group.identity(), vec![i as u8]),
            CycloNum::one(d.conductor()),
        );
        AlgElem { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(GroupElement, Word), &CycloNum)> {
        self.terms.iter()
    }

    fn insert(&mut self, key: (GroupElement, Word), c: CycloNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(old) => {
                *old = old.add(&c);
                if old.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add(&self, other: &AlgElem) -> AlgElem {
        let mut out = self.clone();
        for (key, c) in &other.terms {
            out.insert(key.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> AlgElem {
        AlgElem {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &AlgElem) -> AlgElem {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &CycloNum) -> AlgElem {
        let mut out = AlgElem::zero();
        for (key, coeff) in &self.terms {
            out.insert(key.clone(), coeff.mul(c));
        }
        out
    }

    /// Product with normalization: `(g w)(h v) = chi_w(h)^{-1} (gh)(wv)`
    /// where `chi_w(h)` is the product of `chi_j(h)` over the letters of `w`.
    pub fn mul(&self, other: &AlgElem, d: &Datum) -> AlgElem {
        let mut out = AlgElem::zero();
        for ((g, w), c) in &self.terms {
            for ((h, v), e) in &other.terms {
                let mut scalar = RootOfUnity::one();
                for &j in w {
                    scalar = scalar.mul(
                        d.group
                            .pair(&d.chi[j as usize], h)
                            .expect("datum characters live in the datum group")
                            .inv(),
                    );
                }
                let mut wv = w.clone();
                wv.extend_from_slice(v);
                let coeff = c
                    .mul(e)
                    .mul(&scalar.embed(d.conductor()).expect("pairing fits conductor"));
                out.insert((d.group.add(g, h), wv), coeff);
            }
        }
        out
    }

    pub fn pow(&self, k: u32, d: &Datum) -> AlgElem {
        let mut out = AlgElem::one(d);
        for _ in 0..k {
            out = out.mul(self, d);
        }
        out
    }

    /// Largest word length among the terms.
    pub fn top_degree(&self) -> usize {
        self.terms.keys().map(|(_, w)| w.len()).max().unwrap_or(0)
    }

    /// Yetter-Drinfeld bidegree: `(h * prod g_{w_l}, prod chi_{w_l})` for a
    /// term `h * w`, required to be constant over the terms.
    pub fn bidegree(&self, d: &Datum) -> Result<YDBidegree> {
        let mut found: Option<YDBidegree> = None;
        for (h, w) in self.terms.keys() {
            let mut grp = h.clone();
            let mut chr = d.group.trivial_character();
            for &j in w {
                grp = d.group.add(&grp, &d.g[j as usize]);
                chr = d.group.mul_chars(&chr, &d.chi[j as usize]);
            }
            let bd = YDBidegree { grp, chr };
            match &found {
                Some(prev) if prev != &bd => return Err(Error::NonBihomogeneous),
                Some(_) => {}
                None => found = Some(bd),
            }
        }
        found.ok_or(Error::NonBihomogeneous)
    }

    /// Forget the group part; fails unless every term has trivial group part.
    pub fn to_tensor(&self, conductor: u64) -> Result<TensorElem> {
        let mut out = TensorElem::zero(conductor);
        for ((h, w), c) in &self.terms {
            if !h.is_identity() {
                return Err(Error::NonBihomogeneous);
            }
            out.add_term(w.clone(), c.lift(conductor)?);
        }
        Ok(out)
    }
}

/// `[u, v]_c = u v - <chi_v, g_u> v u` for bihomogeneous `u`, `v`.
pub fn braided_commutator(d: &Datum, u: &AlgElem, v: &AlgElem) -> Result<AlgElem> {
    let bu = u.bidegree(d)?;
    let bv = v.bidegree(d)?;
    let scalar = d.group.pair(&bv.chr, &bu.grp)?;
    let vu = v
        .mul(u, d)
        .scale(&scalar.embed(d.conductor()).expect("pairing fits conductor"));
    Ok(u.mul(v, d).sub(&vu))
}

/// `(ad_c a_i)^m (v)`.
pub fn ad_c_power(d: &Datum, i: usize, m: u32, v: &AlgElem) -> Result<AlgElem> {
    let ai = AlgElem::generator(d, i);
    let mut out = v.clone();
    for _ in 0..m {
        out = braided_commutator(d, &ai, &out)?;
    }
    Ok(out)
}

/// Root vectors indexed by the convex order. Simple roots give generators;
/// a non-simple root `beta` brackets `x_{beta - alpha_i}` with `a_i` for the
/// largest vertex `i` such that `beta - alpha_i` is a positive root occurring
/// earlier in the convex order, ordered by their convex positions.
pub fn root_vectors(d: &Datum, rs: &RootSystemData) -> Result<Vec<AlgElem>> {
    let position: HashMap<&Vec<i64>, usize> = rs
        .convex_order
        .iter()
        .enumerate()
        .map(|(p, beta)| (beta, p))
        .collect();
    let mut out: Vec<AlgElem> = Vec::with_capacity(rs.convex_order.len());
    for (p, beta) in rs.convex_order.iter().enumerate() {
        if height(beta) == 1 {
            let i = beta.iter().position(|&x| x == 1).unwrap();
            out.push(AlgElem::generator(d, i));
            continue;
        }
        let mut built = None;
        for i in (0..d.theta()).rev() {
            if beta[i] == 0 {
                continue;
            }
            let mut gamma = beta.clone();
            gamma[i] -= 1;
            let Some(&pg) = position.get(&gamma) else {
                continue;
            };
            if pg >= p {
                continue;
            }
            let x_gamma = &out[pg];
            let mut alpha = vec![0i64; d.theta()];
            alpha[i] = 1;
            let alpha_pos = position[&alpha];
            let a_i = AlgElem::generator(d, i);
            let x = if alpha_pos > pg {
                braided_commutator(d, x_gamma, &a_i)?
            } else {
                braided_commutator(d, &a_i, x_gamma)?
            };
            built = Some(x);
            break;
        }
        out.push(built.expect("every non-simple root splits off a simple root"));
    }
    Ok(out)
}

/// Kinds of defining relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationKind {
    GroupOrder,
    SmashCommutation,
    QuantumSerre,
    Linking,
    RootVectorPower,
}

/// One tagged relation. Group-order and smash-commutation relations hold
/// identically in the normal-form representation, so their element is zero
/// and only the label documents them.
#[derive(Clone, Debug)]
pub struct Relation {
    pub kind: RelationKind,
    pub label: String,
    pub elem: AlgElem,
}

#[derive(Clone, Debug, Default)]
pub struct RelationSet {
    pub relations: Vec<Relation>,
}

impl RelationSet {
    pub fn extend(&mut self, other: RelationSet) {
        self.relations.extend(other.relations);
    }

    /// The relations that actually cut the algebra down, i.e. with a nonzero
    /// element.
    pub fn elements(&self) -> impl Iterator<Item = &Relation> {
        self.relations.iter().filter(|r| !r.elem.is_zero())
    }
}

/// Which pairs get quantum Serre relations: all `i != j` for the Nichols
/// algebra presentation, only pairs inside one connected component for the
/// lifted algebra (pairs across components carry linking relations instead).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SerreScope {
    AllPairs,
    SameComponentOnly,
}

/// `(ad_c a_i)^{1 - a_ij}(a_j)` for the selected pairs.
pub fn serre_relations(d: &Datum, scope: SerreScope) -> Result<RelationSet> {
    let mut relations = Vec::new();
    for i in 0..d.theta() {
        for j in 0..d.theta() {
            if i == j {
                continue;
            }
            if scope == SerreScope::SameComponentOnly && !d.same_component(i, j) {
                continue;
            }
            let m = (1 - d.cartan.get(i, j)) as u32;
            let elem = ad_c_power(d, i, m, &AlgElem::generator(d, j))?;
            relations.push(Relation {
                kind: RelationKind::QuantumSerre,
                label: format!("(ad a_{})^{} a_{}", i + 1, m, j + 1),
                elem,
            });
        }
    }
    Ok(RelationSet { relations })
}

/// `x_beta^{N_I}` for every positive root, in convex order.
pub fn root_power_relations(d: &Datum, rs: &RootSystemData) -> Result<RelationSet> {
    let vectors = root_vectors(d, rs)?;
    let mut relations = Vec::new();
    for (beta, x) in rs.convex_order.iter().zip(&vectors) {
        let comp = rs.component_of_root(beta);
        let n = d.components.orders[comp];
        relations.push(Relation {
            kind: RelationKind::RootVectorPower,
            label: format!("x_{:?}^{}", beta, n),
            elem: x.pow(n as u32, d),
        });
    }
    Ok(RelationSet { relations })
}

/// `a_i a_j - <chi_j, g_i> a_j a_i - lambda_ij (1 - g_i g_j)` for every
/// pair `i < j` in different components.
pub fn linking_relations(d: &Datum, lambda: &LinkingDatum) -> Result<RelationSet> {
    let mut relations = Vec::new();
    for i in 0..d.theta() {
        for j in i + 1..d.theta() {
            if d.same_component(i, j) {
                continue;
            }
            let ai = AlgElem::generator(d, i);
            let aj = AlgElem::generator(d, j);
            let scalar = d
                .group
                .pair(&d.chi[j], &d.g[i])?
                .embed(d.conductor())
                .expect("pairing fits conductor");
            let mut elem = ai.mul(&aj, d).sub(&aj.mul(&ai, d).scale(&scalar));
            if let Some(l) = lambda.get(i, j) {
                let gij = AlgElem::group_element(d, d.group.add(&d.g[i], &d.g[j]));
                elem = elem.sub(&AlgElem::one(d).sub(&gij).scale(l));
            }
            relations.push(Relation {
                kind: RelationKind::Linking,
                label: format!("[a_{}, a_{}] linking", i + 1, j + 1),
                elem,
            });
        }
    }
    Ok(RelationSet { relations })
}

/// Group-order and smash-commutation relations. Both hold identically in
/// the normal-form representation and are recorded with zero elements.
pub fn group_relations(d: &Datum) -> RelationSet {
    let mut relations = Vec::new();
    for (h, &m) in d.group.orders().iter().enumerate() {
        relations.push(Relation {
            kind: RelationKind::GroupOrder,
            label: format!("y_{}^{} = 1", h + 1, m),
            elem: AlgElem::zero(),
        });
    }
    for h in 0..d.group.rank() {
        for j in 0..d.theta() {
            relations.push(Relation {
                kind: RelationKind::SmashCommutation,
                label: format!("y_{} a_{} = chi_{}(y_{}) a_{} y_{}", h + 1, j + 1, j + 1, h + 1, j + 1, h + 1),
                elem: AlgElem::zero(),
            });
        }
    }
    RelationSet { relations }
}

/// All defining relations of the lifted algebra for a linking datum.
pub fn lifted_relations(
    d: &Datum,
    rs: &RootSystemData,
    lambda: &LinkingDatum,
) -> Result<RelationSet> {
    let mut rels = group_relations(d);
    rels.extend(serre_relations(d, SerreScope::SameComponentOnly)?);
    rels.extend(linking_relations(d, lambda)?);
    rels.extend(root_power_relations(d, rs)?);
    Ok(rels)
}

/// Quotient dimensions from the truncated ideal elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientDims {
    /// dimension of the quotient filtration step at each a-degree `0..=cap`
    pub dims: Vec<u64>,
    pub total: u64,
    /// the caps `cap` and `cap - 1` agree below `cap` and the top PBW degree
    /// lies strictly below `cap`
    pub stabilized: bool,
}

/// Degree of the top PBW monomial, `sum over roots of (N_I - 1) * height`.
pub fn top_pbw_degree(d: &Datum, rs: &RootSystemData) -> u64 {
    rs.positive_roots
        .iter()
        .map(|beta| {
            let n = d.components.orders[rs.component_of_root(beta)];
            (n - 1) * height(beta) as u64
        })
        .sum()
}

/// Dimension of `kGamma<a_*> / J` per a-degree, where `J` is spanned by all
/// normal-form products `m_left * r_h * m_right` of total degree at most the
/// cap (with `r_h` running over the group conjugates of the relations). The
/// group factor splits off by characters: for each character `psi` of the
/// group the spanning vectors specialize to the word space, and the ideal
/// dimension is the sum of the specialized ranks.
pub fn truncated_quotient_dim(
    rels: &RelationSet,
    d: &Datum,
    cap: u32,
    budget: u64,
) -> Result<QuotientDims> {
    check_quotient_budget(d, cap, budget)?;
    let below = quotient_filtration(rels, d, cap.saturating_sub(1))?;
    let at_cap = quotient_filtration(rels, d, cap)?;

    let mut dims = Vec::with_capacity(cap as usize + 1);
    let mut prev = 0u64;
    for &f in &at_cap {
        dims.push(f - prev);
        prev = f;
    }
    let total = *at_cap.last().unwrap();

    let rs = RootSystemData::build(&d.cartan)?;
    let agree = below
        .iter()
        .zip(&at_cap)
        .all(|(a, b)| a == b);
    let stabilized = agree && top_pbw_degree(d, &rs) < cap as u64;
    Ok(QuotientDims {
        dims,
        total,
        stabilized,
    })
}

fn check_quotient_budget(d: &Datum, cap: u32, budget: u64) -> Result<()> {
    let needed = (d.group.cardinality() as u128) * (d.theta().max(1) as u128).pow(cap);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded {
            needed: needed.min(u64::MAX as u128) as u64,
            budget,
        });
    }
    Ok(())
}

/// Cumulative quotient dimensions `F_0..F_cap`, where
/// `F_d = dim M_{<=d} - dim(J cap M_{<=d})`.
fn quotient_filtration(rels: &RelationSet, d: &Datum, cap: u32) -> Result<Vec<u64>> {
    let theta = d.theta();
    let group_order = d.group.cardinality();

    // column order: word degree descending, then lexicographic, so that a
    // pivot in a column of degree e certifies membership in M_{<= e}
    let mut words: Vec<Word> = Vec::new();
    let mut frontier: Vec<Word> = vec![Vec::new()];
    words.push(Vec::new());
    for _ in 0..cap {
        let mut next = Vec::new();
        for w in &frontier {
            for i in 0..theta {
                let mut v = w.clone();
                v.push(i as u8);
                next.push(v);
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    words.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    let col_of: HashMap<&Word, usize> = words.iter().enumerate().map(|(c, w)| (w, c)).collect();
    let col_degree: Vec<usize> = words.iter().map(|w| w.len()).collect();
    let ncols = words.len();

    let mut conductor = d.conductor();
    for rel in rels.elements() {
        for (_, c) in rel.elem.terms() {
            conductor = lcm(conductor, c.conductor());
        }
    }

    // group conjugates of each relation, unique up to scalar
    let elements = d.group.enumerate_elements(u64::MAX)?;
    let mut conjugates: Vec<AlgElem> = Vec::new();
    for rel in rels.elements() {
        let mut seen: Vec<AlgElem> = Vec::new();
        for h in &elements {
            let mut conj = AlgElem::zero();
            for ((k, u), c) in rel.elem.terms() {
                let mut scalar = RootOfUnity::one();
                for &j in u {
                    scalar = scalar.mul(
                        d.group
                            .pair(&d.chi[j as usize], h)
                            .expect("datum characters live in the datum group")
                            .inv(),
                    );
                }
                conj.insert(
                    (k.clone(), u.clone()),
                    c.mul(&scalar.embed(conductor).expect("pairing fits conductor")),
                );
            }
            if !seen
                .iter()
                .any(|other| scalar_multiple(other, &conj))
            {
                seen.push(conj);
            }
        }
        conjugates.extend(seen);
    }

    // spanning vectors: entries (column, group part, coefficient); the group
    // part is later specialized by a character
    let mut base_rows: Vec<Vec<CycloNum>> = Vec::new();
    let mut char_rows: Vec<Vec<(usize, GroupElement, CycloNum)>> = Vec::new();
    for r in &conjugates {
        let t = r.top_degree();
        if t as u32 > cap {
            continue;
        }
        let free = cap as usize - t;
        for (la, left) in words_up_to(theta, free) {
            for (lb, right) in words_up_to(theta, free - la) {
                let _ = lb;
                let mut entries: Vec<(usize, GroupElement, CycloNum)> = Vec::new();
                let mut group_trivial = true;
                for ((k, u), c) in r.terms() {
                    let mut scalar = RootOfUnity::one();
                    for &j in &left {
                        scalar = scalar.mul(
                            d.group
                                .pair(&d.chi[j as usize], k)
                                .expect("datum characters live in the datum group")
                                .inv(),
                        );
                    }
                    let mut w = left.clone();
                    w.extend_from_slice(u);
                    w.extend_from_slice(&right);
                    let col = col_of[&w];
                    let coeff = c.mul(&scalar.embed(conductor).expect("pairing fits conductor"));
                    if !k.is_identity() {
                        group_trivial = false;
                    }
                    entries.push((col, k.clone(), coeff));
                }
                if group_trivial {
                    let mut row = vec![CycloNum::zero(conductor); ncols];
                    for (col, _, coeff) in entries {
                        row[col] = row[col].add(&coeff);
                    }
                    base_rows.push(row);
                } else {
                    char_rows.push(entries);
                }
            }
        }
    }

    // echelonize the character-independent rows once
    let mut base_pivots: BTreeMap<usize, Vec<CycloNum>> = BTreeMap::new();
    for row in base_rows {
        reduce_insert(&mut base_pivots, row);
    }

    // per-degree ideal dimensions, summed over all characters
    let mut ideal_by_degree = vec![0u64; cap as usize + 1];
    if char_rows.is_empty() {
        for &col in base_pivots.keys() {
            ideal_by_degree[col_degree[col]] += group_order;
        }
    } else {
        let characters = d.group.enumerate_characters(u64::MAX)?;
        for psi in &characters {
            let mut pivots = base_pivots.clone();
            for entries in &char_rows {
                let mut row = vec![CycloNum::zero(conductor); ncols];
                for (col, k, coeff) in entries {
                    let v = d
                        .group
                        .pair(psi, k)
                        .expect("characters live in the datum group")
                        .embed(conductor)
                        .expect("pairing fits conductor");
                    row[*col] = row[*col].add(&coeff.mul(&v));
                }
                reduce_insert(&mut pivots, row);
            }
            for &col in pivots.keys() {
                ideal_by_degree[col_degree[col]] += 1;
            }
        }
    }

    // F_d = |Gamma| * #words of length <= d, minus ideal pivots of degree <= d
    let mut out = Vec::with_capacity(cap as usize + 1);
    let mut monomials = 0u64;
    let mut ideal = 0u64;
    let mut pow = 1u64;
    for deg in 0..=cap as usize {
        monomials += group_order * pow;
        pow *= theta as u64;
        ideal += ideal_by_degree[deg];
        out.push(monomials - ideal);
    }
    Ok(out)
}

/// All words of length at most `max`, paired with their length.
fn words_up_to(theta: usize, max: usize) -> Vec<(usize, Word)> {
    let mut out: Vec<(usize, Word)> = vec![(0, Vec::new())];
    let mut frontier: Vec<Word> = vec![Vec::new()];
    for len in 1..=max {
        let mut next = Vec::new();
        for w in &frontier {
            for i in 0..theta {
                let mut v = w.clone();
                v.push(i as u8);
                next.push(v);
            }
        }
        out.extend(next.iter().map(|w| (len, w.clone())));
        frontier = next;
    }
    out
}

fn scalar_multiple(a: &AlgElem, b: &AlgElem) -> bool {
    let ka: Vec<_> = a.terms.keys().collect();
    let kb: Vec<_> = b.terms.keys().collect();
    if ka != kb {
        return false;
    }
    let Some(first) = ka.first() else {
        return true;
    };
    let ratio = b.terms[*first].div(&a.terms[*first]);
    a.terms
        .iter()
        .all(|(k, c)| c.mul(&ratio) == b.terms[k])
}

/// Row reduction step: reduce against existing pivots; on survival normalize
/// and record the new pivot column.
fn reduce_insert(
    pivots: &mut BTreeMap<usize, Vec<CycloNum>>,
    mut row: Vec<CycloNum>,
) -> Option<usize> {
    let n = row.len();
    let mut c = 0;
    while c < n {
        if row[c].is_zero() {
            c += 1;
            continue;
        }
        match pivots.get(&c) {
            Some(p) => {
                let f = row[c].clone();
                for k in c..n {
                    if !p[k].is_zero() {
                        row[k] = row[k].sub(&p[k].mul(&f));
                    }
                }
                c += 1;
            }
            None => {
                let inv = row[c].inv();
                for k in c..n {
                    if !row[k].is_zero() {
                        row[k] = row[k].mul(&inv);
                    }
                }
                pivots.insert(c, row);
                return Some(c);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::AbelianGroup;
    use crate::linking::validate_datum;

    fn taft() -> Datum {
        let group = AbelianGroup::elementary(3, 1);
        let g = vec![group.element(&[1]).unwrap()];
        let chi = vec![group.character(&[1]).unwrap()];
        validate_datum(&group, g, chi, None).unwrap()
    }

    fn a2_zeta3() -> Datum {
        let group = AbelianGroup::elementary(3, 2);
        let g = vec![
            group.element(&[1, 0]).unwrap(),
            group.element(&[0, 1]).unwrap(),
        ];
        let chi = vec![
            group.character(&[1, 1]).unwrap(),
            group.character(&[1, 1]).unwrap(),
        ];
        validate_datum(&group, g, chi, None).unwrap()
    }

    fn linked_a1a1() -> Datum {
        let group = AbelianGroup::elementary(3, 2);
        let g = vec![
            group.element(&[1, 0]).unwrap(),
            group.element(&[1, 0]).unwrap(),
        ];
        let chi = vec![
            group.character(&[1, 0]).unwrap(),
            group.character(&[2, 0]).unwrap(),
        ];
        validate_datum(&group, g, chi, None).unwrap()
    }

    #[test]
    fn normal_form_commutation() {
        let d = taft();
        let y = AlgElem::group_element(&d, d.group.element(&[1]).unwrap());
        let a = AlgElem::generator(&d, 0);
        // y a = chi(y) a y, so a y = chi(y)^{-1} y a
        let ay = a.mul(&y, &d);
        let ya = y.mul(&a, &d);
        let q = d.group.pair(&d.chi[0], &d.g[0]).unwrap();
        assert_eq!(
            ay,
            ya.scale(&q.inv().embed(d.conductor()).unwrap())
        );
    }

    #[test]
    fn multiplication_is_associative() {
        let d = a2_zeta3();
        let y = AlgElem::group_element(&d, d.group.element(&[1, 2]).unwrap());
        let a = AlgElem::generator(&d, 0);
        let b = AlgElem::generator(&d, 1);
        let p = a.mul(&y, &d).add(&b);
        let q = y.mul(&b, &d).sub(&a);
        let r = b.mul(&a, &d).add(&y);
        let left = p.mul(&q, &d).mul(&r, &d);
        let right = p.mul(&q.mul(&r, &d), &d);
        assert_eq!(left, right);
    }

    #[test]
    fn self_commutator_formula() {
        let d = taft();
        let a = AlgElem::generator(&d, 0);
        let got = braided_commutator(&d, &a, &a).unwrap();
        let q = d.braiding.get(0, 0).embed(d.conductor()).unwrap();
        let expected = a
            .mul(&a, &d)
            .scale(&CycloNum::one(d.conductor()).sub(&q));
        assert_eq!(got, expected);
    }

    #[test]
    fn commutator_bidegree_multiplies() {
        let d = a2_zeta3();
        let a = AlgElem::generator(&d, 0);
        let b = AlgElem::generator(&d, 1);
        let br = braided_commutator(&d, &a, &b).unwrap();
        let bd = br.bidegree(&d).unwrap();
        assert_eq!(bd.grp, d.group.add(&d.g[0], &d.g[1]));
        assert_eq!(bd.chr, d.group.mul_chars(&d.chi[0], &d.chi[1]));
    }

    #[test]
    fn ad_power_zero_is_identity() {
        let d = a2_zeta3();
        let b = AlgElem::generator(&d, 1);
        assert_eq!(ad_c_power(&d, 0, 0, &b).unwrap(), b);
    }

    #[test]
    fn root_vectors_a2() {
        let d = a2_zeta3();
        let rs = RootSystemData::build(&d.cartan).unwrap();
        let xs = root_vectors(&d, &rs).unwrap();
        assert_eq!(xs.len(), 3);
        assert_eq!(xs[0], AlgElem::generator(&d, 0));
        assert_eq!(xs[2], AlgElem::generator(&d, 1));
        let mid = braided_commutator(
            &d,
            &AlgElem::generator(&d, 0),
            &AlgElem::generator(&d, 1),
        )
        .unwrap();
        assert_eq!(xs[1], mid);
        // bidegree of the middle vector
        let bd = xs[1].bidegree(&d).unwrap();
        assert_eq!(bd.grp, d.group.add(&d.g[0], &d.g[1]));
    }

    #[test]
    fn taft_relations_and_dimension() {
        let d = taft();
        let rs = RootSystemData::build(&d.cartan).unwrap();
        let rels = lifted_relations(&d, &rs, &LinkingDatum::empty()).unwrap();
        // only the root power a_1^3 is a nonzero element
        assert_eq!(rels.elements().count(), 1);
        let q = truncated_quotient_dim(&rels, &d, 4, 1 << 16).unwrap();
        assert_eq!(q.total, 9);
        assert!(q.stabilized);
        assert_eq!(q.dims, vec![3, 3, 3, 0, 0]);
    }

    #[test]
    fn linking_relation_shape() {
        let d = linked_a1a1();
        let mut map = BTreeMap::new();
        map.insert((0usize, 1usize), CycloNum::one(d.conductor()));
        let lambda = LinkingDatum::new(&d, map).unwrap();
        let rels = linking_relations(&d, &lambda).unwrap();
        let rel = &rels.relations[0];
        // a_1 a_2 - <chi_2, g_1> a_2 a_1 - 1 + g_1 g_2: four terms
        assert_eq!(rel.elem.terms().count(), 4);
        let keys: Vec<_> = rel.elem.terms().map(|(k, _)| k.clone()).collect();
        assert!(keys.contains(&(d.group.identity(), vec![])));
        assert!(keys.contains(&(d.group.add(&d.g[0], &d.g[1]), vec![])));
    }

    #[test]
    fn lifted_dimension_invariant_under_lambda() {
        let d = linked_a1a1();
        let rs = RootSystemData::build(&d.cartan).unwrap();

        let rels0 = lifted_relations(&d, &rs, &LinkingDatum::empty()).unwrap();
        let q0 = truncated_quotient_dim(&rels0, &d, 6, 1 << 16).unwrap();
        assert_eq!(q0.total, 81);
        assert!(q0.stabilized);

        let mut map = BTreeMap::new();
        map.insert((0usize, 1usize), CycloNum::one(d.conductor()));
        let lambda = LinkingDatum::new(&d, map).unwrap();
        let rels1 = lifted_relations(&d, &rs, &lambda).unwrap();
        let q1 = truncated_quotient_dim(&rels1, &d, 6, 1 << 16).unwrap();
        assert_eq!(q1.total, 81);
        assert!(q1.stabilized);
        assert_eq!(q0.total, q1.total);
    }

    #[test]
    fn quotient_budget_enforced() {
        let d = linked_a1a1();
        let rs = RootSystemData::build(&d.cartan).unwrap();
        let rels = lifted_relations(&d, &rs, &LinkingDatum::empty()).unwrap();
        assert!(matches!(
            truncated_quotient_dim(&rels, &d, 20, 1 << 16),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn serre_relation_bidegree() {
        let d = a2_zeta3();
        let rels = serre_relations(&d, SerreScope::AllPairs).unwrap();
        assert_eq!(rels.elements().count(), 2);
        // (ad a_1)^2 a_2 has bidegree (g_1^2 g_2, chi_1^2 chi_2)
        let bd = rels.relations[0].elem.bidegree(&d).unwrap();
        let g = d.group.add(&d.group.scalar_mul(2, &d.g[0]), &d.g[1]);
        let chr = d
            .group
            .mul_chars(&d.group.char_pow(&d.chi[0], 2), &d.chi[1]);
        assert_eq!(bd.grp, g);
        assert_eq!(bd.chr, chr);
    }
}
