//! Relation systems over the admissible words of a type: double shuffle
//! (DBSF), duality and P-R relations, and the ranks built from them.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::basis::pure_to_type;
use crate::composition::CompositionPair;
use crate::enumerate::enumerate_admissible;
use crate::error::{Error, Result};
use crate::linalg::{self, SparseRow};
use crate::lincomb::LinComb;
use crate::rational::{int, Rational};
use crate::series::{eval_composition_lincomb, eval_zword, TruncatedSeries};
use crate::shuffle::{to_type_basis, Shuffler};
use crate::stuffle::Stuffler;
use crate::word::PyWord;
use crate::zword::{TypeTag, ZLetter, ZWord};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Dbsf(ZWord, ZWord),
    Duality(PyWord),
    PR(ZWord),
    Imported(String),
}

impl Provenance {
    pub fn kind(&self) -> RelationKind {
        match self {
            Provenance::Dbsf(..) => RelationKind::Dbsf,
            Provenance::Duality(_) => RelationKind::Duality,
            Provenance::PR(_) => RelationKind::PR,
            Provenance::Imported(_) => RelationKind::Imported,
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Dbsf(u, v) => write!(f, "DBSF({u}; {v})"),
            Provenance::Duality(w) => write!(f, "Duality({w})"),
            Provenance::PR(w) => write!(f, "PR({w})"),
            Provenance::Imported(s) => write!(f, "Imported({s})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationKind {
    Dbsf,
    Duality,
    PR,
    Imported,
}

#[derive(Clone, Debug)]
pub struct Relation {
    pub coeffs: SparseRow,
    pub provenance: Provenance,
}

/// Relations among the admissible words of one type within a weight/depth window.
#[derive(Clone, Debug)]
pub struct RelationSystem {
    pub ty: TypeTag,
    pub weight: u32,
    pub basis: Vec<ZWord>,
    index: HashMap<ZWord, usize>,
    pub rows: Vec<Relation>,
    /// Generated relations dropped because they left the window.
    pub escaped: usize,
}

impl RelationSystem {
    pub fn new(ty: TypeTag, weight: u32) -> Self {
        Self::with_basis(ty, weight, enumerate_admissible(ty, weight))
    }

    pub fn with_basis(ty: TypeTag, weight: u32, basis: Vec<ZWord>) -> Self {
        let index = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        Self {
            ty,
            weight,
            basis,
            index,
            rows: Vec::new(),
            escaped: 0,
        }
    }

    pub fn index_of(&self, w: &ZWord) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Sparse row of a combination, or `None` if it leaves the basis.
    pub fn to_row(&self, c: &LinComb<ZWord>) -> Option<SparseRow> {
        let mut row: SparseRow = Vec::with_capacity(c.len());
        for (w, coeff) in c.iter() {
            row.push((self.index_of(w)?, coeff.clone()));
        }
        row.sort_by_key(|e| e.0);
        Some(row)
    }

    pub fn combination(&self, row: &[(usize, Rational)]) -> LinComb<ZWord> {
        row.iter()
            .map(|(i, c)| (self.basis[*i].clone(), c.clone()))
            .collect()
    }

    /// Adds `c = 0` as a relation. Zero combinations are dropped; combinations
    /// leaving the window are counted in `escaped` and dropped.
    pub fn push(&mut self, c: &LinComb<ZWord>, provenance: Provenance) -> bool {
        if c.is_zero() {
            return false;
        }
        match self.to_row(c) {
            Some(coeffs) => {
                self.rows.push(Relation { coeffs, provenance });
                true
            }
            None => {
                log::debug!(
                    "{provenance} leaves the {} window of weight {}",
                    self.ty,
                    self.weight
                );
                self.escaped += 1;
                false
            }
        }
    }

    pub fn extend(&mut self, other: RelationSystem) {
        assert_eq!(self.basis, other.basis, "systems over different bases");
        self.rows.extend(other.rows);
        self.escaped += other.escaped;
    }

    fn rows_of(&self, kinds: &[RelationKind]) -> Vec<SparseRow> {
        self.rows
            .iter()
            .filter(|r| kinds.contains(&r.provenance.kind()))
            .map(|r| r.coeffs.clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<SparseRow> = self.rows.iter().map(|r| r.coeffs.clone()).collect();
        linalg::rank(&rows, self.basis.len())
    }

    /// A copy keeping only the rows of the given kinds.
    pub fn filtered(&self, kinds: &[RelationKind]) -> RelationSystem {
        let mut out = self.clone();
        out.rows.retain(|r| kinds.contains(&r.provenance.kind()));
        out
    }

    pub fn rank_of(&self, kinds: &[RelationKind]) -> usize {
        linalg::rank(&self.rows_of(kinds), self.basis.len())
    }

    /// Rank of the relations that only involve basis words satisfying `keep`.
    pub fn induced_rank(&self, keep: impl Fn(&ZWord) -> bool) -> usize {
        self.induced_rows(keep).0
    }

    fn induced_rows(&self, keep: impl Fn(&ZWord) -> bool) -> (usize, Vec<SparseRow>) {
        let mask: Vec<bool> = self.basis.iter().map(keep).collect();
        let rows: Vec<SparseRow> = self.rows.iter().map(|r| r.coeffs.clone()).collect();
        linalg::restricted_rows(&rows, self.basis.len(), &mask)
    }

    /// Series of every basis word to order `N`.
    pub fn basis_series(&self, order: usize) -> Result<Vec<TruncatedSeries>> {
        basis_series(self.ty, &self.basis, order)
    }

    /// Indices of rows that do not evaluate to the zero series.
    pub fn unsound_rows(&self, order: usize) -> Result<Vec<usize>> {
        let series = self.basis_series(order)?;
        let integral: Vec<Vec<BigInt>> = series
            .iter()
            .map(|s| s.coeffs().iter().map(|c| c.to_integer()).collect())
            .collect();
        let all_integral = series
            .iter()
            .all(|s| s.coeffs().iter().all(|c| c.is_integer()));
        Ok(self
            .rows
            .par_iter()
            .enumerate()
            .filter(|(_, r)| {
                let mut acc = vec![Rational::zero(); order + 1];
                for (i, c) in &r.coeffs {
                    if all_integral {
                        for (a, v) in acc.iter_mut().zip(&integral[*i]) {
                            if !v.is_zero() {
                                *a += c * Rational::from_integer(v.clone());
                            }
                        }
                    } else {
                        for (a, v) in acc.iter_mut().zip(series[*i].coeffs()) {
                            *a += c * v;
                        }
                    }
                }
                acc.iter().any(|c| !c.is_zero())
            })
            .map(|(i, _)| i)
            .collect())
    }

    /// Relations of `self` expressed over the words of `target`, matched by
    /// their `(t, s)` realization. Relations involving other words are
    /// eliminated first.
    pub fn project_onto(&self, target: &RelationSystem) -> Result<Vec<SparseRow>> {
        let mut by_comp: HashMap<CompositionPair, usize> = HashMap::new();
        for (i, w) in target.basis.iter().enumerate() {
            by_comp.insert(w.composition(target.ty)?, i);
        }
        let mut column_map: Vec<Option<usize>> = Vec::with_capacity(self.basis.len());
        for w in &self.basis {
            column_map.push(by_comp.get(&w.composition(self.ty)?).copied());
        }
        let (_, rows) =
            self.induced_rows(|w| self.index_of(w).and_then(|i| column_map[i]).is_some());
        Ok(rows
            .into_iter()
            .map(|row| {
                let mut mapped: SparseRow = row
                    .into_iter()
                    .map(|(i, c)| (column_map[i].unwrap(), c))
                    .collect();
                mapped.sort_by_key(|e| e.0);
                mapped
            })
            .collect())
    }

    /// Appends the relations of `source` that live on this system's words.
    pub fn import(&mut self, source: &RelationSystem, label: &str) -> Result<usize> {
        let rows = self.project_onto_self(source)?;
        let n = rows.len();
        for coeffs in rows {
            self.rows.push(Relation {
                coeffs,
                provenance: Provenance::Imported(label.to_string()),
            });
        }
        Ok(n)
    }

    fn project_onto_self(&self, source: &RelationSystem) -> Result<Vec<SparseRow>> {
        source.project_onto(self)
    }
}

pub fn basis_series(ty: TypeTag, basis: &[ZWord], order: usize) -> Result<Vec<TruncatedSeries>> {
    basis.par_iter().map(|w| eval_zword(w, ty, order)).collect()
}

/// The family whose products and dualities generate the relations of `ty`.
fn generating_type(ty: TypeTag) -> TypeTag {
    ty.parent().unwrap_or(ty)
}

fn level(w: &ZWord) -> u32 {
    w.weight().max(w.depth() as u32)
}

/// Stuffle minus shuffle for every pair `u, v` with
/// `max(wt u, dp u) + max(wt v, dp v) <= w`.
pub fn gen_dbsf(ty: TypeTag, w: u32) -> Result<RelationSystem> {
    let ty = generating_type(ty);
    if ty == TypeTag::O {
        return Err(Error::Unsupported("DBSF relations for O words".into()));
    }
    let mut sys = RelationSystem::new(ty, w);
    let words = sys.basis.clone();
    let mut pairs = Vec::new();
    for i in 0..words.len() {
        for j in i..words.len() {
            if level(&words[i]) + level(&words[j]) <= w {
                pairs.push((i, j));
            }
        }
    }
    let rows: Vec<(LinComb<ZWord>, Provenance)> = pairs
        .par_iter()
        .map_init(
            || (Stuffler::new(ty), Shuffler::new()),
            |(st, sh), &(i, j)| -> Result<_> {
                let (u, v) = (&words[i], &words[j]);
                let stuffled = st.stuffle(u, v)?;
                let shuffled = sh.shuffle_comb(&u.to_py(ty)?, &v.to_py(ty)?);
                let row = stuffled - to_type_basis(ty, &shuffled)?;
                Ok((row, Provenance::Dbsf(u.clone(), v.clone())))
            },
        )
        .collect::<Result<_>>()?;
    for (row, prov) in rows {
        sys.push(&row, prov);
    }
    Ok(sys)
}

/// Pure words used for duality: every run of `ρ` and of `y` has length at
/// least 2 for Ĩ, no restriction otherwise.
fn duality_source(ty: TypeTag, p: &PyWord) -> bool {
    match ty {
        TypeTag::ITilde => p
            .block_form()
            .map(|bf| bf.runs.iter().all(|&(a, b)| a >= 2 && b >= 2))
            .unwrap_or(false),
        _ => true,
    }
}

/// `p - dual(p)` over the basis of `ty` for pure words `p` of weight and depth `<= w`.
pub fn duality_relations(ty: TypeTag, w: u32) -> Result<Vec<(LinComb<ZWord>, PyWord)>> {
    let ty = generating_type(ty);
    if ty == TypeTag::O {
        return Err(Error::Unsupported("duality relations for O words".into()));
    }
    let mut out = Vec::new();
    for word in enumerate_admissible(TypeTag::II, w) {
        let p = word.to_py(TypeTag::II)?.into_iter().next().unwrap().0;
        let d = p.dual()?;
        if d <= p || !duality_source(ty, &p) {
            continue;
        }
        let rel =
            pure_to_type(ty, &LinComb::word(p.clone()))? - pure_to_type(ty, &LinComb::word(d))?;
        if !rel.is_zero() {
            out.push((rel, p));
        }
    }
    Ok(out)
}

pub fn gen_duality(ty: TypeTag, w: u32) -> Result<RelationSystem> {
    let mut sys = RelationSystem::new(generating_type(ty), w);
    for (rel, p) in duality_relations(ty, w)? {
        sys.push(&rel, Provenance::Duality(p));
    }
    Ok(sys)
}

/// One-step `π = ρ + 1` relations on G words:
/// `z_{t,s} = z_{t+1,s} + z_{t,s-1}` in any block with `t < s`.
pub fn gen_pr(w: u32) -> RelationSystem {
    let mut sys = RelationSystem::new(TypeTag::G, w);
    for word in sys.basis.clone() {
        for (j, l) in word.letters().iter().enumerate() {
            let ZLetter::ZG { t, s } = *l else {
                unreachable!()
            };
            if t == s {
                continue;
            }
            let replaced = |nt, ns| {
                let mut letters = word.letters().to_vec();
                letters[j] = ZLetter::ZG { t: nt, s: ns };
                ZWord::from_letters(letters)
            };
            let mut rel = LinComb::word(word.clone());
            rel.add_term(replaced(t + 1, s), int(-1));
            rel.add_term(replaced(t, s - 1), int(-1));
            sys.push(&rel, Provenance::PR(word.clone()));
        }
    }
    sys
}

/// DBSF, duality and (for G) P-R relations of `ty` at weight `w`.
pub fn gen_all(ty: TypeTag, w: u32) -> Result<RelationSystem> {
    let mut sys = gen_dbsf(ty, w)?;
    sys.extend(gen_duality(ty, w)?);
    if generating_type(ty) == TypeTag::G {
        sys.extend(gen_pr(w));
    }
    Ok(sys)
}

/// Rank of the series coefficient matrix of `words`.
pub fn dim_lower_bound(words: &[ZWord], ty: TypeTag, order: usize) -> Result<usize> {
    let series = basis_series(ty, words, order)?;
    let rows: Vec<Vec<Rational>> = series.into_iter().map(|s| s.coeffs().to_vec()).collect();
    Ok(linalg::dense_rank(&rows))
}

fn in_window(w: &ZWord, weight: u32) -> bool {
    w.weight() <= weight && w.depth() as u32 <= weight
}

/// Rank of the relations of `sys` (generated for the parent family if `ty`
/// is I or IV) that involve only `ty` words in the window of `w`.
pub fn window_rank(sys: &RelationSystem, ty: TypeTag, w: u32) -> usize {
    sys.induced_rank(|word| in_window(word, w) && word.is_admissible(ty))
}

/// Rank of DBSF, duality and P-R relations among the `ty` words of weight `<= w`.
pub fn relation_rank(ty: TypeTag, w: u32) -> Result<usize> {
    let sys = gen_all(ty, w)?;
    if ty.parent().is_some() {
        Ok(window_rank(&sys, ty, w))
    } else {
        Ok(sys.rank())
    }
}

/// `#W - dim - rank`; negative values mean an unsound relation.
fn checked_deficiency(count: usize, dim: usize, rank: usize) -> Result<usize> {
    let d = count as i64 - dim as i64 - rank as i64;
    if d < 0 {
        return Err(Error::NegativeDeficiency(d));
    }
    Ok(d as usize)
}

pub fn deficiency(ty: TypeTag, w: u32, order: usize) -> Result<usize> {
    let words = enumerate_admissible(ty, w);
    let dim = dim_lower_bound(&words, ty, order)?;
    checked_deficiency(words.len(), dim, relation_rank(ty, w)?)
}

/// Deficiency at weight `w` using relations generated at weight `w + delta`.
pub fn augmented_deficiency(ty: TypeTag, w: u32, delta: u32, order: usize) -> Result<usize> {
    let words = enumerate_admissible(ty, w);
    let dim = dim_lower_bound(&words, ty, order)?;
    let sys = gen_all(ty, w + delta)?;
    checked_deficiency(words.len(), dim, window_rank(&sys, ty, w))
}

/// Rank of the relations among the `ty` words of weight `<= w` implied by the
/// `ty` relations of weight `w + delta` together with all G relations of
/// weight `g_weight`, compared in the common G encoding.
pub fn rank_with_g_import(ty: TypeTag, w: u32, delta: u32, g_weight: u32) -> Result<usize> {
    let own = gen_all(ty, w + delta)?;
    let g = gen_all(TypeTag::G, g_weight)?;
    let mut basis: Vec<ZWord> = g.basis.clone();
    let known: std::collections::HashSet<ZWord> = basis.iter().cloned().collect();
    let own_ty = own.ty;
    for word in &own.basis {
        let gw = word.to_g(own_ty)?;
        if !known.contains(&gw) {
            basis.push(gw);
        }
    }
    crate::enumerate::sort_canonical(TypeTag::G, &mut basis);
    let mut merged = RelationSystem::with_basis(TypeTag::G, g_weight.max(w + delta), basis);
    for rel in &g.rows {
        merged.push(&g.combination(&rel.coeffs), rel.provenance.clone());
    }
    for rel in &own.rows {
        let c = own
            .combination(&rel.coeffs)
            .map_linear(|x| x.to_g(own_ty).map(LinComb::word))?;
        merged.push(&c, rel.provenance.clone());
    }
    let targets: std::collections::HashSet<ZWord> = enumerate_admissible(ty, w)
        .iter()
        .map(|x| x.to_g(ty))
        .collect::<Result<_>>()?;
    Ok(merged.induced_rank(|x| targets.contains(x)))
}

/// Deficiency at weight `w` with relations of weight `w + delta` and
/// imported G relations of weight `g_weight`.
pub fn deficiency_with_g_import(
    ty: TypeTag,
    w: u32,
    delta: u32,
    g_weight: u32,
    order: usize,
) -> Result<usize> {
    let words = enumerate_admissible(ty, w);
    let dim = dim_lower_bound(&words, ty, order)?;
    checked_deficiency(
        words.len(),
        dim,
        rank_with_g_import(ty, w, delta, g_weight)?,
    )
}

/// Relations of `sys` restricted to `subbasis` (all other words eliminated).
pub fn project_relations(sys: &RelationSystem, ty: TypeTag, subbasis: &[ZWord]) -> RelationSystem {
    let keep: std::collections::HashSet<&ZWord> = subbasis.iter().collect();
    let (_, rows) = sys.induced_rows(|w| keep.contains(w));
    let mut out = RelationSystem::with_basis(ty, sys.weight, subbasis.to_vec());
    for row in rows {
        let c = sys.combination(&row);
        out.push(
            &c,
            Provenance::Imported(format!("projection of {}", sys.ty)),
        );
    }
    out
}

/// Whether `lhs - rhs` vanishes to order `N`.
pub fn verify_identity(lhs_minus_rhs: &LinComb<CompositionPair>, order: usize) -> Result<bool> {
    Ok(eval_composition_lincomb(lhs_minus_rhs, order)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zw(s: &str) -> ZWord {
        s.parse().unwrap()
    }

    #[test]
    fn smallest_dbsf() {
        let sys = gen_dbsf(TypeTag::II, 2).unwrap();
        assert_eq!(sys.rows.len(), 1);
        let rel = sys.combination(&sys.rows[0].coeffs);
        let want: LinComb<ZWord> = [(zw("z'2"), int(1)), (zw("z'1 z'0"), int(-1))]
            .into_iter()
            .collect();
        assert!(rel == want || rel == -want);
        assert_eq!(sys.rank(), 1);
    }

    #[test]
    fn smallest_duality() {
        let rels = duality_relations(TypeTag::II, 2).unwrap();
        assert_eq!(rels.len(), 1);
        let rel = &rels[0].0;
        assert_eq!(rel.coeff(&zw("z'2")), -rel.coeff(&zw("z'1 z'0")));
    }

    #[test]
    fn pr_example() {
        let sys = gen_pr(3);
        let want: LinComb<ZWord> = [
            (zw("z(1,3)"), int(1)),
            (zw("z(2,3)"), int(-1)),
            (zw("z(1,2)"), int(-1)),
        ]
        .into_iter()
        .collect();
        assert!(sys.rows.iter().any(|r| sys.combination(&r.coeffs) == want));
        let pure = sys.index_of(&zw("z(2,2)")).unwrap();
        assert!(!sys
            .rows
            .iter()
            .any(|r| matches!(&r.provenance, Provenance::PR(w) if sys.index_of(w) == Some(pure))));
    }

    #[test]
    fn small_systems_are_sound() {
        for ty in [
            TypeTag::ITilde,
            TypeTag::II,
            TypeTag::III,
            TypeTag::IVTilde,
            TypeTag::G,
        ] {
            let sys = gen_all(ty, 3).unwrap();
            assert!(sys.unsound_rows(40).unwrap().is_empty(), "{ty}");
        }
    }

    #[test]
    fn empty_identity() {
        assert!(verify_identity(&LinComb::new(), 10).unwrap());
    }
}
