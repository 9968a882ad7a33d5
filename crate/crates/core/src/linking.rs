//! Validated data `(Gamma, (g_i), (chi_i), A)`, linkability predicates,
//! enumeration of linking data and of full data over `(Z/p)^s`, and
//! mechanical hypothesis checkers for the classification theorems.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::abelian::{AbelianGroup, Character, GroupElement};
use crate::braiding::{
    components_of, detect_cartan, BraidingMatrix, CartanTypeResult, ComponentStructure,
};
use crate::exactfield::CycloNum;
use crate::rootsys::{CartanMatrix, DynkinType};
use crate::{Error, Result};

/// A validated datum: group, Yetter-Drinfeld degrees, braiding, finite-type
/// Cartan matrix and component structure. Non-fatal violations of the
/// standing hypotheses (odd braiding orders, 3 coprime to N on G2) are
/// recorded as warnings.
#[derive(Clone, Debug)]
pub struct Datum {
    pub group: AbelianGroup,
    pub g: Vec<GroupElement>,
    pub chi: Vec<Character>,
    pub braiding: BraidingMatrix,
    pub cartan: CartanMatrix,
    pub components: ComponentStructure,
    pub warnings: Vec<String>,
}

impl Datum {
    pub fn theta(&self) -> usize {
        self.g.len()
    }

    /// Conductor of the cyclotomic field all pairing values live in.
    pub fn conductor(&self) -> u64 {
        self.group.exponent()
    }

    /// `N_i`, the order of the diagonal braiding value at vertex `i`.
    pub fn vertex_order(&self, i: usize) -> u64 {
        self.braiding.diagonal_order(i)
    }

    /// Whether vertices are connected in the Dynkin diagram.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.cartan.get(i, j) != 0
    }

    /// Whether vertices lie in the same connected component.
    pub fn same_component(&self, i: usize, j: usize) -> bool {
        self.components.component_of(i) == self.components.component_of(j)
    }
}

/// Check the datum axioms: `<chi_i, g_i> != 1` for all `i`, the braiding is
/// of finite Cartan type, and a supplied Cartan matrix (if any) agrees with
/// the detected one.
pub fn validate_datum(
    group: &AbelianGroup,
    g: Vec<GroupElement>,
    chi: Vec<Character>,
    supplied_cartan: Option<&CartanMatrix>,
) -> Result<Datum> {
    if g.len() != chi.len() {
        return Err(Error::LengthMismatch {
            expected: g.len(),
            got: chi.len(),
        });
    }
    for (i, (gi, ci)) in g.iter().zip(&chi).enumerate() {
        if group.pair(ci, gi)?.is_one() {
            return Err(Error::InvalidDatum {
                i,
                j: i,
                reason: "diagonal pairing <chi_i, g_i> = 1".into(),
            });
        }
    }
    let braiding = BraidingMatrix::from_datum(group, &g, &chi)?;
    let cartan = match detect_cartan(&braiding) {
        CartanTypeResult::Cartan(a) => a,
        CartanTypeResult::NotCartan { i, j } => {
            return Err(Error::InvalidDatum {
                i,
                j,
                reason: "no integer a_ij with <chi_j,g_i><chi_i,g_j> = <chi_i,g_i>^a_ij".into(),
            })
        }
    };
    if let Some(supplied) = supplied_cartan {
        if supplied != &cartan {
            return Err(Error::InvalidDatum {
                i: 0,
                j: 0,
                reason: "supplied Cartan matrix disagrees with the detected one".into(),
            });
        }
    }
    let components = components_of(&braiding, &cartan)?;

    let mut warnings = Vec::new();
    for i in 0..g.len() {
        for j in 0..g.len() {
            if braiding.get(i, j).order() % 2 == 0 {
                warnings.push(format!(
                    "braiding value at ({},{}) has even order {}",
                    i + 1,
                    j + 1,
                    braiding.get(i, j).order()
                ));
            }
        }
    }
    for (comp, &n) in components.components.iter().zip(&components.orders) {
        if comp.dynkin == DynkinType::G2 && n % 3 == 0 {
            warnings.push(format!(
                "G2 component at vertex {} has N divisible by 3",
                comp.vertices[0] + 1
            ));
        }
    }

    Ok(Datum {
        group: group.clone(),
        g,
        chi,
        braiding,
        cartan,
        components,
        warnings,
    })
}

/// Linking values `lambda_ij` for `i < j`, nonzero only on linkable pairs.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LinkingDatum {
    lambda: BTreeMap<(usize, usize), CycloNum>,
}

impl LinkingDatum {
    pub fn empty() -> Self {
        LinkingDatum::default()
    }

    /// Validate against a datum: keys ordered and in range, nonzero values
    /// only on linkable pairs, and no vertex linked to two partners.
    pub fn new(d: &Datum, lambda: BTreeMap<(usize, usize), CycloNum>) -> Result<Self> {
        let mut partner = vec![None; d.theta()];
        for (&(i, j), value) in &lambda {
            if i >= j || j >= d.theta() {
                return Err(Error::InvalidLinking {
                    i,
                    j,
                    reason: "linking indices must satisfy i < j <= theta".into(),
                });
            }
            if value.is_zero() {
                continue;
            }
            let cert = linkable(d, i, j);
            if !cert.linkable {
                return Err(Error::InvalidLinking {
                    i,
                    j,
                    reason: format!(
                        "nonzero lambda on a non-linkable pair ({})",
                        cert.failed.join("; ")
                    ),
                });
            }
            for &v in &[i, j] {
                if let Some(other) = partner[v] {
                    return Err(Error::InvalidLinking {
                        i,
                        j,
                        reason: format!("vertex {} already linked to {}", v + 1, other + 1usize),
                    });
                }
            }
            partner[i] = Some(j);
            partner[j] = Some(i);
        }
        let lambda = lambda.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Ok(LinkingDatum { lambda })
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&CycloNum> {
        self.lambda.get(&(i, j))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &CycloNum)> {
        self.lambda.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.lambda.is_empty()
    }
}

/// Outcome of the linkability test, listing the failed conditions.
#[derive(Clone, Debug)]
pub struct LinkCertificate {
    pub linkable: bool,
    pub failed: Vec<&'static str>,
}

/// Vertices `i != j` are linkable when they are not adjacent, `g_i g_j != 1`,
/// and `chi_i chi_j` is trivial. When all three hold the derived identity
/// `chi_j(g_j) = chi_i(g_i)^{-1}` follows and is asserted.
pub fn linkable(d: &Datum, i: usize, j: usize) -> LinkCertificate {
    assert_ne!(i, j, "linkability needs two distinct vertices");
    let mut failed = Vec::new();
    if d.same_component(i, j) {
        failed.push("vertices lie in the same connected component");
    }
    if d.group.add(&d.g[i], &d.g[j]).is_identity() {
        failed.push("g_i g_j = 1");
    }
    if !d.group.mul_chars(&d.chi[i], &d.chi[j]).is_trivial() {
        failed.push("chi_i chi_j is not the trivial character");
    }
    let linkable = failed.is_empty();
    if linkable {
        let qi = d.braiding.get(i, i);
        let qj = d.braiding.get(j, j);
        assert_eq!(qj, qi.inv(), "linkable pair must satisfy q_j = q_i^-1");
    }
    LinkCertificate { linkable, failed }
}

/// All unordered linkable pairs of a datum.
pub fn linkable_pairs(d: &Datum) -> Vec<(usize, usize)> {
    let theta = d.theta();
    let mut out = Vec::new();
    for i in 0..theta {
        for j in i + 1..theta {
            if linkable(d, i, j).linkable {
                out.push((i, j));
            }
        }
    }
    out
}

/// One enumerated linking: the set of actively linked pairs, plus concrete
/// `{0,1}` values when normalization is requested (otherwise the nonzero
/// values are left free and no `LinkingDatum` is materialized).
#[derive(Clone, Debug)]
pub struct LinkingChoice {
    pub pairs: Vec<(usize, usize)>,
    pub lambda: Option<LinkingDatum>,
}

/// Enumerate linkings as partial matchings on the linkable pairs: every
/// subset of pairwise vertex-disjoint linkable pairs, in deterministic order.
pub fn enumerate_linkings(d: &Datum, normalize: bool) -> Vec<LinkingChoice> {
    let pairs = linkable_pairs(d);
    let mut out = Vec::new();
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    let mut used = vec![false; d.theta()];
    fn go(
        d: &Datum,
        pairs: &[(usize, usize)],
        start: usize,
        chosen: &mut Vec<(usize, usize)>,
        used: &mut Vec<bool>,
        normalize: bool,
        out: &mut Vec<LinkingChoice>,
    ) {
        let lambda = normalize.then(|| {
            let one = CycloNum::one(d.conductor());
            let map = chosen.iter().map(|&p| (p, one.clone())).collect();
            LinkingDatum::new(d, map).expect("matching of linkable pairs is valid")
        });
        out.push(LinkingChoice {
            pairs: chosen.clone(),
            lambda,
        });
        for (k, &(i, j)) in pairs.iter().enumerate().skip(start) {
            if used[i] || used[j] {
                continue;
            }
            used[i] = true;
            used[j] = true;
            chosen.push((i, j));
            go(d, pairs, k + 1, chosen, used, normalize, out);
            chosen.pop();
            used[i] = false;
            used[j] = false;
        }
    }
    go(d, &pairs, 0, &mut chosen, &mut used, normalize, &mut out);
    out
}

/// The vertex bound of the classification: `theta <= 2s(p-1)/(p-2)`.
pub fn theta_bound(p: u64, s: usize) -> u64 {
    2 * s as u64 * (p - 1) / (p - 2)
}

/// Exhaustive enumeration of valid data over `(Z/p)^s` with at most
/// `theta_max` vertices. Candidates are pairs `(g, chi)` with nonzero
/// diagonal pairing; tuples are extended depth-first and pruned as soon as a
/// prefix fails finite-type detection (every principal submatrix of a
/// finite-type matrix is of finite type). With `reduce_by_permutation`,
/// only tuples that are non-decreasing in candidate order are emitted, one
/// representative per simultaneous vertex permutation.
pub fn enumerate_data(
    p: u64,
    s: usize,
    theta_max: usize,
    type_filter: Option<&[DynkinType]>,
    reduce_by_permutation: bool,
    budget: u64,
) -> Result<Vec<Datum>> {
    let group = AbelianGroup::elementary(p, s);
    let elements = group.enumerate_elements(budget)?;
    let characters = group.enumerate_characters(budget)?;

    let mut candidates: Vec<(GroupElement, Character)> = Vec::new();
    for g in &elements {
        for chi in &characters {
            if !group.pair(chi, g)?.is_one() {
                candidates.push((g.clone(), chi.clone()));
            }
        }
    }

    let bound = theta_bound(p, s) as usize;
    let cap = theta_max.min(bound);

    struct Search<'a> {
        group: &'a AbelianGroup,
        candidates: &'a [(GroupElement, Character)],
        cap: usize,
        type_filter: Option<&'a [DynkinType]>,
        reduce: bool,
    }

    fn extend(
        ctx: &Search<'_>,
        tuple: &mut Vec<usize>,
        out: &mut Vec<Datum>,
    ) {
        let g: Vec<GroupElement> = tuple
            .iter()
            .map(|&k| ctx.candidates[k].0.clone())
            .collect();
        let chi: Vec<Character> = tuple
            .iter()
            .map(|&k| ctx.candidates[k].1.clone())
            .collect();
        let datum = match validate_datum(ctx.group, g, chi, None) {
            Ok(d) => d,
            Err(_) => return, // not finite type (or not Cartan): prune the branch
        };
        let keep = match ctx.type_filter {
            Some(allowed) => datum
                .components
                .components
                .iter()
                .all(|c| allowed.contains(&c.dynkin)),
            None => true,
        };
        if keep {
            out.push(datum);
        }
        if tuple.len() == ctx.cap {
            return;
        }
        let start = if ctx.reduce {
            *tuple.last().unwrap()
        } else {
            0
        };
        for k in start..ctx.candidates.len() {
            tuple.push(k);
            extend(ctx, tuple, out);
            tuple.pop();
        }
    }

    let ctx = Search {
        group: &group,
        candidates: &candidates,
        cap,
        type_filter,
        reduce: reduce_by_permutation,
    };

    // partition by the first vertex; partitions are independent and merged
    // in candidate order for determinism
    let chunks: Vec<Vec<Datum>> = (0..candidates.len())
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            let mut tuple = vec![first];
            extend(&ctx, &mut tuple, &mut out);
            out
        })
        .collect();
    let mut out = Vec::new();
    for chunk in chunks {
        for d in chunk {
            assert!(
                d.theta() as u64 <= theta_bound(p, s),
                "datum exceeds the vertex bound"
            );
            out.push(d);
        }
    }
    Ok(out)
}

/// One checked hypothesis: whether it holds and, if not, why.
#[derive(Clone, Debug)]
pub struct Flag {
    pub ok: bool,
    pub reasons: Vec<String>,
}

impl Flag {
    fn ok() -> Self {
        Flag {
            ok: true,
            reasons: Vec::new(),
        }
    }

    fn fail(&mut self, reason: String) {
        self.ok = false;
        self.reasons.push(reason);
    }
}

/// Mechanical evaluation of the theorems' hypotheses against a datum.
#[derive(Clone, Debug)]
pub struct HypothesisReport {
    /// classification theorem: p > 17 prime and the group is (Z/p)^s
    pub thm_main_applicable: Flag,
    /// mild quantum Serre relations: N != 3 per connected component,
    /// N != 5 on B/C/F4, N != 7 on G2
    pub serre_lift_ok: Flag,
    /// degree-one generation: odd braiding orders, N coprime to 3 and > 7
    /// (plus 5 on B/C/F4, 5 and 7 on G2), and for non-adjacent pairs
    /// q_i q_j = 1 or ord(q_i q_j) = N_i
    pub degree1_ok: Flag,
    /// standing hypothesis: every <chi_i, g_j> has odd order
    pub odd_orders_ok: Flag,
    /// standing hypothesis: 3 does not divide N on G2 components
    pub g2_3_ok: Flag,
    /// lifted root-vector vanishing needs g_i^{N_i} = 1
    pub powroot_ok: Flag,
    /// small-prime cases explicitly left open by the classification
    pub not_covered: Vec<String>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Evaluate every numbered hypothesis of the lifting and classification
/// statements on a validated datum. `p_context` is the prime the caller
/// intends to apply the main classification over; when absent it is taken
/// from the group when the group is elementary abelian.
pub fn check_hypotheses(d: &Datum, p_context: Option<u64>) -> HypothesisReport {
    let theta = d.theta();
    let orders = d.group.orders();
    let elementary_p = orders
        .first()
        .copied()
        .filter(|&p| is_prime(p) && orders.iter().all(|&m| m == p));
    let p = p_context.or(elementary_p);

    let mut thm_main = Flag::ok();
    match p {
        Some(p) if elementary_p == Some(p) => {
            if p <= 17 {
                thm_main.fail(format!("p = {p} is not > 17"));
            }
        }
        _ => thm_main.fail("group is not (Z/p)^s for a prime p".into()),
    }

    let mut serre = Flag::ok();
    let mut degree1 = Flag::ok();
    let mut g2_3 = Flag::ok();
    let mut not_covered = Vec::new();
    for (comp, &n) in d
        .components
        .components
        .iter()
        .zip(&d.components.orders)
    {
        let label = format!("{} component at vertex {}", comp.dynkin, comp.vertices[0] + 1);
        if n == 3 {
            serre.fail(format!("{label}: N_I != 3 required"));
        }
        if comp.dynkin.is_bcf() && n == 5 {
            serre.fail(format!("{label}: N_I != 5 required on types B, C, F4"));
        }
        if comp.dynkin == DynkinType::G2 && n == 7 {
            serre.fail(format!("{label}: N_I != 7 required on type G2"));
        }
        if comp.dynkin == DynkinType::G2 && n % 3 == 0 {
            g2_3.fail(format!("{label}: N_I divisible by 3"));
        }

        if n % 3 == 0 {
            degree1.fail(format!("{label}: N_I divisible by 3"));
        }
        if n <= 7 {
            degree1.fail(format!("{label}: N_I = {n} is not > 7"));
        }
        if comp.dynkin.is_bcf() && n % 5 == 0 {
            degree1.fail(format!("{label}: N_I divisible by 5 on types B, C, F4"));
        }
        if comp.dynkin == DynkinType::G2 && (n % 5 == 0 || n % 7 == 0) {
            degree1.fail(format!("{label}: N_I divisible by 5 or 7 on type G2"));
        }

        if comp.dynkin == DynkinType::B(2) && n == 5 {
            not_covered.push(format!("{label}: type B2 with N = 5 is left open"));
        }
        if comp.dynkin == DynkinType::G2 && n == 7 {
            not_covered.push(format!("{label}: type G2 with N = 7 is left open"));
        }
    }

    let mut odd = Flag::ok();
    for i in 0..theta {
        for j in 0..theta {
            let ord = d.braiding.get(i, j).order();
            if ord % 2 == 0 {
                odd.fail(format!(
                    "<chi_{}, g_{}> has even order {}",
                    j + 1,
                    i + 1,
                    ord
                ));
            }
        }
    }

    for i in 0..theta {
        for j in 0..theta {
            if i == j || d.same_component(i, j) {
                continue;
            }
            let prod = d.braiding.get(i, i).mul(d.braiding.get(j, j));
            if !prod.is_one() && prod.order() != d.vertex_order(i) {
                degree1.fail(format!(
                    "pair ({},{}) in different components: q_i q_j != 1 and ord(q_i q_j) != N_i",
                    i + 1,
                    j + 1
                ));
            }
        }
    }
    if !odd.ok {
        degree1.fail("braiding orders are not all odd".into());
    }

    let mut powroot = Flag::ok();
    for i in 0..theta {
        let n = d.vertex_order(i);
        if !d
            .group
            .scalar_mul(n as i64, &d.g[i])
            .is_identity()
        {
            powroot.fail(format!("g_{}^N_{} != 1", i + 1, i + 1));
        }
    }

    HypothesisReport {
        thm_main_applicable: thm_main,
        serre_lift_ok: serre,
        degree1_ok: degree1,
        odd_orders_ok: odd,
        g2_3_ok: g2_3,
        powroot_ok: powroot,
        not_covered,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn taft() -> Datum {
        let group = AbelianGroup::elementary(3, 1);
        let g = vec![group.element(&[1]).unwrap()];
        let chi = vec![group.character(&[1]).unwrap()];
        validate_datum(&group, g, chi, None).unwrap()
    }

    /// two A_1 vertices over (Z/3)^2 with chi_2 = chi_1^{-1} and g_2 = g_1,
    /// so the pair is linkable: g_1 g_2 != 1 and chi_1 chi_2 trivial
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
    fn taft_datum_is_valid_a1() {
        let d = taft();
        assert_eq!(d.theta(), 1);
        assert_eq!(d.cartan.rows(), &[vec![2]]);
        assert_eq!(d.components.orders, vec![3]);
    }

    #[test]
    fn diagonal_pairing_one_rejected() {
        let group = AbelianGroup::elementary(3, 2);
        let g = vec![group.element(&[1, 0]).unwrap()];
        let chi = vec![group.character(&[0, 1]).unwrap()];
        assert!(matches!(
            validate_datum(&group, g, chi, None),
            Err(Error::InvalidDatum { i: 0, j: 0, .. })
        ));
    }

    #[test]
    fn supplied_cartan_must_match() {
        let group = AbelianGroup::elementary(3, 1);
        let g = vec![group.element(&[1]).unwrap()];
        let chi = vec![group.character(&[1]).unwrap()];
        let wrong = CartanMatrix::new(vec![vec![2, 0], vec![0, 2]]).unwrap();
        assert!(validate_datum(&group, g, chi, Some(&wrong)).is_err());
    }

    #[test]
    fn linkable_pair_example() {
        let d = linked_a1a1();
        // check the datum really is A_1 x A_1
        assert_eq!(d.cartan.rows(), &[vec![2, 0], vec![0, 2]]);
        let cert = linkable(&d, 0, 1);
        assert!(cert.linkable, "failed: {:?}", cert.failed);
    }

    #[test]
    fn adjacent_vertices_not_linkable() {
        let group = AbelianGroup::elementary(3, 2);
        let g = vec![
            group.element(&[1, 0]).unwrap(),
            group.element(&[0, 1]).unwrap(),
        ];
        let chi = vec![
            group.character(&[1, 1]).unwrap(),
            group.character(&[1, 1]).unwrap(),
        ];
        let d = validate_datum(&group, g, chi, None).unwrap();
        assert_eq!(d.cartan.get(0, 1), -1);
        let cert = linkable(&d, 0, 1);
        assert!(!cert.linkable);
        assert!(cert.failed[0].contains("same connected component"));
    }

    #[test]
    fn nontrivial_product_character_not_linkable() {
        let group = AbelianGroup::elementary(3, 2);
        let g = vec![
            group.element(&[1, 0]).unwrap(),
            group.element(&[0, 1]).unwrap(),
        ];
        let chi = vec![
            group.character(&[1, 0]).unwrap(),
            group.character(&[0, 1]).unwrap(),
        ];
        let d = validate_datum(&group, g, chi, None).unwrap();
        if d.cartan.get(0, 1) == 0 {
            let cert = linkable(&d, 0, 1);
            assert!(!cert.linkable);
        }
    }

    #[test]
    fn linking_enumeration_counts() {
        let d = taft();
        assert_eq!(enumerate_linkings(&d, true).len(), 1);

        let d = linked_a1a1();
        let linkings = enumerate_linkings(&d, true);
        assert_eq!(linkings.len(), 2);
        assert!(linkings[0].pairs.is_empty());
        assert_eq!(linkings[1].pairs, vec![(0, 1)]);
        assert!(linkings[1].lambda.as_ref().unwrap().get(0, 1).is_some());
    }

    #[test]
    fn linking_rejects_non_linkable_values() {
        let d = taft();
        // theta = 1: no pairs at all
        let mut map = BTreeMap::new();
        map.insert((0usize, 1usize), CycloNum::one(3));
        assert!(LinkingDatum::new(&d, map).is_err());
    }

    #[test]
    fn enumerate_p3_s1_theta1() {
        let data = enumerate_data(3, 1, 1, None, false, 1 << 16).unwrap();
        assert_eq!(data.len(), 4);
        for d in &data {
            assert_eq!(d.theta(), 1);
        }
    }

    #[test]
    fn enumerate_respects_theta_bound() {
        // bound for p=3, s=1 is 4: asking for 5 yields nothing of length 5
        let data = enumerate_data(3, 1, 5, None, true, 1 << 16).unwrap();
        assert!(data.iter().all(|d| d.theta() <= 4));
    }

    #[test]
    fn hypothesis_examples() {
        // A_2 at N=3 fails the mild Serre condition
        let group = AbelianGroup::elementary(3, 2);
        let g = vec![
            group.element(&[1, 0]).unwrap(),
            group.element(&[0, 1]).unwrap(),
        ];
        let chi = vec![
            group.character(&[1, 1]).unwrap(),
            group.character(&[1, 1]).unwrap(),
        ];
        let d = validate_datum(&group, g, chi, None).unwrap();
        let report = check_hypotheses(&d, None);
        assert!(!report.serre_lift_ok.ok);
        assert!(report
            .serre_lift_ok
            .reasons
            .iter()
            .any(|r| r.contains("N_I != 3")));
        assert!(!report.thm_main_applicable.ok);
    }

    #[test]
    fn thm_main_applicable_for_p19() {
        let group = AbelianGroup::elementary(19, 2);
        let g = vec![
            group.element(&[1, 0]).unwrap(),
            group.element(&[0, 1]).unwrap(),
        ];
        let chi = vec![
            group.character(&[1, 0]).unwrap(),
            group.character(&[0, 1]).unwrap(),
        ];
        let d = validate_datum(&group, g, chi, None).unwrap();
        let report = check_hypotheses(&d, None);
        assert!(report.thm_main_applicable.ok);
    }

    #[test]
    fn link3_holds_on_enumerated_data() {
        let data = enumerate_data(3, 1, 2, None, false, 1 << 16).unwrap();
        for d in &data {
            for (i, j) in linkable_pairs(d) {
                assert_eq!(d.braiding.get(j, j), d.braiding.get(i, i).inv());
            }
        }
    }
}
