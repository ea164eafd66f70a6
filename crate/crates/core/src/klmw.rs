//! Straightening of dual wedges modulo the adjoint shuffle relations, the
//! resulting `d`-matrix, and the experiments built on them.
//!
//! Partitions label charge-0 diagrams through [`Maya::of_partition`]. Under
//! this labeling every rewrite replaces `s*_λ` by terms `s*_ν` with `ν` lower
//! in mlex and `ν^T ◁ λ^T`.

use crate::exact::{cyclotomic_reduce, rank_over_q};
use crate::exterior::{elems, k_subsets, t_shuffle, ExtTensor, LinearOperator};
use crate::fock::{shuffle_adjoint, FockVector};
use crate::partitions::{jump_covers, mlex_cmp, Maya, Partition};
use crate::symfunc::kf_transition_matrices;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::RwLock;

/// One rewrite `s*_λ ↦ Σ …` performed during straightening.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RewriteStep {
    pub partition: Partition,
    pub ell: usize,
    pub d: usize,
    pub terms: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StraighteningResult {
    pub input: Partition,
    pub n: usize,
    pub coeffs: BTreeMap<Partition, BigInt>,
    pub trace: Vec<RewriteStep>,
}

/// Straightening engine with an optional shared memo table.
///
/// Completed entries are immutable; lookups take a read lock and insertion a
/// short write lock, so one engine can serve parallel callers.
pub struct Straightener {
    n: usize,
    memo: Option<RwLock<HashMap<Partition, BTreeMap<Partition, BigInt>>>>,
}

impl Straightener {
    pub fn new(n: usize) -> Result<Self> {
        Self::build(n, true)
    }

    /// An engine that recomputes every subterm.
    pub fn without_memo(n: usize) -> Result<Self> {
        Self::build(n, false)
    }

    fn build(n: usize, memo: bool) -> Result<Self> {
        if n < 2 {
            return Err(Error::Precondition(format!("straightening needs n ≥ 2, got {n}")));
        }
        Ok(Straightener {
            n,
            memo: memo.then(|| RwLock::new(HashMap::new())),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The single rewrite of a non-regular `λ`: `s*_λ ≡ Σ c_ν s*_ν`.
    pub fn rewrite(&self, lambda: &Partition) -> Result<(RewriteStep, BTreeMap<Partition, BigInt>)> {
        let g = lambda.gap_and_regularize(self.n);
        let Some(ell) = g.ell else {
            return Err(Error::Precondition(format!("{lambda} is {}-regular", self.n)));
        };
        let v = shuffle_adjoint(self.n, g.d, &FockVector::<BigInt>::of_partition(&g.rho, true));
        let lead = v.coeff_of_partition(lambda);
        if lead.abs() != BigInt::one() {
            return Err(Error::Fault(format!(
                "coefficient of s*_{lambda} in the adjoint shuffle of s*_{} is {lead}",
                g.rho
            )));
        }
        let mut out = BTreeMap::new();
        for (nu, c) in v.by_partition() {
            if &nu == lambda {
                continue;
            }
            if mlex_cmp(&nu, lambda) != Ordering::Less {
                return Err(Error::Fault(format!("rewrite of {lambda} produced {nu}, not mlex-lower")));
            }
            out.insert(nu, -(&lead * c));
        }
        let step = RewriteStep {
            partition: lambda.clone(),
            ell,
            d: g.d,
            terms: out.len(),
        };
        Ok((step, out))
    }

    fn expand(&self, lambda: &Partition, trace: &mut Vec<RewriteStep>) -> Result<BTreeMap<Partition, BigInt>> {
        if lambda.is_n_regular(self.n) {
            return Ok(BTreeMap::from([(lambda.clone(), BigInt::one())]));
        }
        if let Some(memo) = &self.memo {
            if let Some(hit) = memo.read().expect("memo lock").get(lambda) {
                return Ok(hit.clone());
            }
        }
        let (step, terms) = self.rewrite(lambda)?;
        trace.push(step);
        let mut acc: BTreeMap<Partition, BigInt> = BTreeMap::new();
        for (nu, c) in terms {
            for (key, x) in self.expand(&nu, trace)? {
                let e = acc.entry(key.clone()).or_insert_with(BigInt::zero);
                *e += &c * x;
                if e.is_zero() {
                    acc.remove(&key);
                }
            }
        }
        if let Some(memo) = &self.memo {
            memo.write().expect("memo lock").entry(lambda.clone()).or_insert_with(|| acc.clone());
        }
        Ok(acc)
    }

    pub fn straighten(&self, lambda: &Partition) -> Result<StraighteningResult> {
        let mut trace = Vec::new();
        let coeffs = self.expand(lambda, &mut trace)?;
        Ok(StraighteningResult {
            input: lambda.clone(),
            n: self.n,
            coeffs,
            trace,
        })
    }
}

pub fn straighten(lambda: &Partition, n: usize) -> Result<StraighteningResult> {
    Straightener::new(n)?.straighten(lambda)
}

/// `d_{λ,ν}` for `λ` `n`-regular and `ν` arbitrary, all of one size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DMatrix {
    pub n: usize,
    pub size: usize,
    /// All partitions of `size`, lexicographically decreasing.
    pub partitions: Vec<Partition>,
    pub regular: Vec<Partition>,
    pub entries: BTreeMap<(Partition, Partition), BigInt>,
}

impl DMatrix {
    pub fn get(&self, lambda: &Partition, nu: &Partition) -> BigInt {
        self.entries
            .get(&(lambda.clone(), nu.clone()))
            .cloned()
            .unwrap_or_default()
    }
}

pub fn d_matrix(n: usize, size: usize) -> Result<DMatrix> {
    d_matrix_with(&Straightener::new(n)?, size)
}

pub fn d_matrix_with(engine: &Straightener, size: usize) -> Result<DMatrix> {
    let n = engine.n();
    let partitions = Partition::all_of_size(size);
    let regular: Vec<Partition> = partitions.iter().filter(|p| p.is_n_regular(n)).cloned().collect();
    let rows: Vec<StraighteningResult> = partitions
        .par_iter()
        .map(|nu| engine.straighten(nu))
        .collect::<Result<_>>()?;
    let mut entries = BTreeMap::new();
    for r in rows {
        for (lambda, c) in r.coeffs {
            entries.insert((lambda, r.input.clone()), c);
        }
    }
    Ok(DMatrix {
        n,
        size,
        partitions,
        regular,
        entries,
    })
}

/// Rank over ℚ of all `(sh^{(n)}_d)*(s*_μ)` of degree `size`.
pub fn shuffle_span_dim(n: usize, size: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    let parts = Partition::all_of_size(size);
    let index: HashMap<&Partition, usize> = parts.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut vectors = Vec::new();
    for d in 1..=size / n {
        for mu in Partition::all_of_size(size - n * d) {
            let v = shuffle_adjoint(n, d, &FockVector::<BigInt>::of_partition(&mu, true));
            let mut row = vec![BigInt::zero(); parts.len()];
            for (p, c) in v.by_partition() {
                row[index[&p]] = c;
            }
            vectors.push(row);
        }
    }
    rank_over_q(&vectors, parts.len())
}

pub fn regular_count(n: usize, size: usize) -> usize {
    Partition::all_of_size(size).iter().filter(|p| p.is_n_regular(n)).count()
}

/// One entry of the Kostka–Foulkes cross-check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KfEntry {
    pub lambda: Partition,
    pub nu: Partition,
    pub d_poly: String,
    pub d_at_root: String,
    pub straightening: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KfComparison {
    pub n: usize,
    pub size: usize,
    pub entries: Vec<KfEntry>,
    /// First entry whose reduction at `ζ_n` is not a rational integer.
    pub non_integer: Option<KfEntry>,
    /// First entry where the two pipelines differ.
    pub first_discrepancy: Option<KfEntry>,
}

impl KfComparison {
    pub fn matches(&self) -> bool {
        self.non_integer.is_none() && self.first_discrepancy.is_none()
    }
}

/// Compares `D(ζ_n)` from Kostka–Foulkes inversion with the straightening
/// `d`-matrix entry by entry.
pub fn kf_compare(n: usize, size: usize) -> Result<KfComparison> {
    let kf = kf_transition_matrices(size, n)?;
    let dm = d_matrix(n, size)?;
    let mut out = KfComparison {
        n,
        size,
        entries: Vec::new(),
        non_integer: None,
        first_discrepancy: None,
    };
    for (r, &ri) in kf.regular.iter().enumerate() {
        let lambda = &kf.partitions[ri];
        for (c, nu) in kf.partitions.iter().enumerate() {
            let poly = &kf.d[r][c];
            let red = cyclotomic_reduce(poly, n as u64);
            let s = dm.get(lambda, nu);
            let entry = KfEntry {
                lambda: lambda.clone(),
                nu: nu.clone(),
                d_poly: poly.to_string(),
                d_at_root: red.residue().to_string(),
                straightening: s.clone(),
            };
            match red.as_integer() {
                None => {
                    if out.non_integer.is_none() {
                        out.non_integer = Some(entry.clone());
                    }
                }
                Some(v) if v != s => {
                    if out.first_discrepancy.is_none() {
                        out.first_discrepancy = Some(entry.clone());
                    }
                }
                Some(_) => {}
            }
            out.entries.push(entry);
        }
    }
    Ok(out)
}

/// Connected components of the undirected `n`-jump cover graph next to the
/// `(n-core, size)` classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    pub n: usize,
    pub size: usize,
    pub components: Vec<Vec<Partition>>,
    pub classes: BTreeMap<Partition, Vec<Partition>>,
    /// Cores whose class meets more than one component, with one witness per
    /// component.
    pub splits: Vec<(Partition, Vec<Partition>)>,
}

impl ComponentReport {
    pub fn coincide(&self) -> bool {
        self.splits.is_empty() && self.components.len() == self.classes.len()
    }
}

pub fn n_dominance_components(n: usize, size: usize) -> Result<ComponentReport> {
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    let parts = Partition::all_of_size(size);
    let index: HashMap<&Partition, usize> = parts.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut parent: Vec<usize> = (0..parts.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (i, p) in parts.iter().enumerate() {
        for q in jump_covers(p, n) {
            let (a, b) = (find(&mut parent, i), find(&mut parent, index[&q]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut comps: BTreeMap<usize, Vec<Partition>> = BTreeMap::new();
    let mut comp_of = Vec::with_capacity(parts.len());
    for (i, p) in parts.iter().enumerate() {
        let r = find(&mut parent, i);
        comp_of.push(r);
        comps.entry(r).or_default().push(p.clone());
    }
    let mut classes: BTreeMap<Partition, Vec<Partition>> = BTreeMap::new();
    let mut class_comps: BTreeMap<Partition, BTreeMap<usize, Partition>> = BTreeMap::new();
    for (i, p) in parts.iter().enumerate() {
        let core = p.n_core(n);
        classes.entry(core.clone()).or_default().push(p.clone());
        class_comps.entry(core).or_default().entry(comp_of[i]).or_insert_with(|| p.clone());
    }
    let splits = class_comps
        .into_iter()
        .filter(|(_, c)| c.len() > 1)
        .map(|(core, c)| (core, c.into_values().collect()))
        .collect();
    Ok(ComponentReport {
        n,
        size,
        components: comps.into_values().collect(),
        classes,
        splits,
    })
}

/// What to export.
#[derive(Clone, Debug)]
pub enum ExportTarget {
    /// Linear forms `⟨(sh^{(n)}_d)* s*_μ, ·⟩` supported in degrees `≤ max_degree`.
    SatoShuffle { n: usize, max_degree: usize },
    /// Linear forms `e*_A ∘ sh^T_d` on `∧^k V`, `1 ≤ d ≤ k`.
    TShuffle { t: LinearOperator<BigInt>, k: usize },
}

fn gen_line<K: Ord + Clone>(form: &BTreeMap<K, BigInt>, order: &BTreeMap<K, usize>, names: &[String]) -> String {
    let mut terms: Vec<(usize, &BigInt)> = form.iter().map(|(k, c)| (order[k], c)).collect();
    terms.sort();
    let body: Vec<String> = terms
        .into_iter()
        .map(|(i, c)| format!("{}{}*{}", if c.is_negative() { "-" } else { "+" }, c.abs(), names[i]))
        .collect();
    format!("gen: {}", body.join(" "))
}

/// Plain-text generator listing: a header line, one `var:` line per variable,
/// then one `gen:` line per nonzero linear form. LF line endings.
pub fn emit_ideal_generators(target: &ExportTarget) -> Result<String> {
    let mut out = String::new();
    match target {
        ExportTarget::SatoShuffle { n, max_degree } => {
            if *n == 0 {
                return Err(Error::Precondition("n must be positive".into()));
            }
            // by degree, then by bead list
            let vars: Vec<Partition> = (0..=*max_degree)
                .flat_map(|m| {
                    let mut ps = Partition::all_of_size(m);
                    ps.sort_by(|a, b| mlex_cmp(b, a));
                    ps
                })
                .collect();
            let names: Vec<String> = vars.iter().map(|p| format!("X[{}]", Maya::of_partition(p))).collect();
            let order: BTreeMap<Partition, usize> = vars.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
            writeln!(out, "ring: X indexed by maya; char: 0").unwrap();
            for v in &names {
                writeln!(out, "var: {v}").unwrap();
            }
            for m in 0..=*max_degree {
                for d in (1..).take_while(|d| m + n * d <= *max_degree) {
                    for mu in Partition::all_of_size(m) {
                        let form = shuffle_adjoint(*n, d, &FockVector::<BigInt>::of_partition(&mu, true)).by_partition();
                        if !form.is_empty() {
                            writeln!(out, "{}", gen_line(&form, &order, &names)).unwrap();
                        }
                    }
                }
            }
        }
        ExportTarget::TShuffle { t, k } => {
            let n = t.n();
            let vars = k_subsets(n, *k);
            let names: Vec<String> = vars
                .iter()
                .map(|&s| {
                    let e: Vec<String> = elems(s).iter().map(|i| i.to_string()).collect();
                    format!("X[{}]", e.join(","))
                })
                .collect();
            let order: BTreeMap<u32, usize> = vars.iter().enumerate().map(|(i, &s)| (s, i)).collect();
            writeln!(out, "ring: X indexed by subset; char: 0").unwrap();
            for v in &names {
                writeln!(out, "var: {v}").unwrap();
            }
            for d in 1..=*k {
                let mut forms: BTreeMap<u32, BTreeMap<u32, BigInt>> = BTreeMap::new();
                for &s in &vars {
                    for (a, c) in t_shuffle(d, t, &ExtTensor::<BigInt>::from_mask(n, s)).terms() {
                        forms.entry(a).or_default().insert(s, c.clone());
                    }
                }
                let mut keyed: Vec<(usize, BTreeMap<u32, BigInt>)> =
                    forms.into_iter().map(|(a, f)| (order[&a], f)).collect();
                keyed.sort_by_key(|(i, _)| *i);
                for (_, f) in keyed {
                    writeln!(out, "{}", gen_line(&f, &order, &names)).unwrap();
                }
            }
        }
    }
    Ok(out)
}

/// Partitions appearing in a straightening result, for order checks.
pub fn support(r: &StraighteningResult) -> BTreeSet<Partition> {
    r.coeffs.keys().cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;

    #[test]
    fn documented_straightenings() {
        let r = straighten(&part![2, 1], 2).unwrap();
        assert_eq!(r.coeffs, BTreeMap::from([(part![2, 1], BigInt::one())]));
        let r = straighten(&part![1, 1], 2).unwrap();
        assert_eq!(r.coeffs, BTreeMap::from([(part![2], BigInt::one())]));
        assert_eq!(r.trace.len(), 1);
        let r = straighten(&part![1, 1, 1], 3).unwrap();
        assert_eq!(r.trace.len(), 1);
        assert!(r.coeffs.keys().all(|p| p.is_n_regular(3)));
        assert!(straighten(&part![1], 1).is_err());
    }

    #[test]
    fn memo_and_plain_agree() {
        for n in [2, 3] {
            let a = Straightener::new(n).unwrap();
            let b = Straightener::without_memo(n).unwrap();
            for m in 0..=8 {
                for p in Partition::all_of_size(m) {
                    assert_eq!(a.straighten(&p).unwrap().coeffs, b.straighten(&p).unwrap().coeffs, "{p}");
                }
            }
        }
    }

    #[test]
    fn straightening_soundness_small() {
        for n in [2, 3] {
            let s = Straightener::new(n).unwrap();
            for m in 0..=7 {
                for p in Partition::all_of_size(m) {
                    let r = s.straighten(&p).unwrap();
                    for q in r.coeffs.keys() {
                        assert!(q.is_n_regular(n));
                        assert_eq!(q.n_core(n), p.n_core(n));
                        if !p.is_n_regular(n) {
                            assert_eq!(mlex_cmp(q, &p), Ordering::Less);
                            assert!(p.transpose().dominates(&q.transpose()) && q != &p);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn d_matrix_examples() {
        let d = d_matrix(2, 2).unwrap();
        assert_eq!(d.get(&part![2], &part![1, 1]), BigInt::one());
        assert_eq!(d.get(&part![2], &part![2]), BigInt::one());
        for n in [2, 3] {
            for size in 0..=6 {
                let d = d_matrix(n, size).unwrap();
                for l in &d.regular {
                    for nu in &d.partitions {
                        let x = d.get(l, nu);
                        if nu.is_n_regular(n) {
                            assert_eq!(x, BigInt::from((l == nu) as i64));
                        } else if !x.is_zero() {
                            assert!(l.dominates(nu) && l != nu);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn span_dimensions() {
        assert_eq!(shuffle_span_dim(2, 0).unwrap(), 0);
        assert_eq!(shuffle_span_dim(2, 2).unwrap(), 1);
        assert_eq!(shuffle_span_dim(3, 3).unwrap(), 1);
        for n in [2, 3] {
            for m in 0..=7 {
                assert_eq!(shuffle_span_dim(n, m).unwrap() + regular_count(n, m), Partition::count(m));
            }
        }
    }

    #[test]
    fn kf_cross_check() {
        let c = kf_compare(2, 2).unwrap();
        assert!(c.matches());
        let row: Vec<&str> = c.entries.iter().map(|e| e.d_at_root.as_str()).collect();
        assert_eq!(row, vec!["1", "1"]);
        for n in [2, 3] {
            for size in 0..=5 {
                let c = kf_compare(n, size).unwrap();
                assert!(c.matches(), "n={n} size={size}: {:?} {:?}", c.non_integer, c.first_discrepancy);
            }
        }
    }

    #[test]
    fn components_versus_classes() {
        let r = n_dominance_components(3, 2).unwrap();
        assert!(r.components.iter().all(|c| c.len() == 1) && r.coincide());
        assert!(n_dominance_components(2, 4).unwrap().coincide());
        for m in 0..=8 {
            assert!(n_dominance_components(3, m).unwrap().coincide(), "size {m}");
        }
    }

    #[test]
    fn exports() {
        let doc = emit_ideal_generators(&ExportTarget::SatoShuffle { n: 2, max_degree: 2 }).unwrap();
        let gens: Vec<&str> = doc.lines().filter(|l| l.starts_with("gen:")).collect();
        assert_eq!(doc.lines().next(), Some("ring: X indexed by maya; char: 0"));
        assert_eq!(gens, vec!["gen: +1*X[(-2,1,...)] -1*X[(-1,0,2,...)]"]);
        let zero = LinearOperator::<BigInt>::zero(4);
        let doc = emit_ideal_generators(&ExportTarget::TShuffle { t: zero, k: 2 }).unwrap();
        assert_eq!(doc.lines().filter(|l| l.starts_with("gen:")).count(), 0);
        let j4 = LinearOperator::<BigInt>::jordan(&[4]);
        let doc = emit_ideal_generators(&ExportTarget::TShuffle { t: j4, k: 2 }).unwrap();
        assert_eq!(doc.lines().filter(|l| l.starts_with("var:")).count(), 6);
        assert!(doc.lines().any(|l| l.starts_with("gen:")));
        assert!(doc.ends_with('\n') && !doc.contains('\r'));
    }
}
