use super::{Check, Flags, JobSpec, Param, SuiteOutput};
use crate::exact::{Fp, HnfBuilder, IntPoly, Ring};
use crate::exterior::sample::{decomposable, random_op, random_tensor, random_two_tensor};
use crate::exterior::signs::{commutation_holds, split_sign_holds, epsilon, epsilon_with, sign_product_constant};
use crate::exterior::{
    elems, k_subsets, omega_apply, omega_t, omega_t_apply, psi_mask, psi_star_mask, t_shuffle, two_tensor_prop_rhs,
    wedge_power, ExtTensor, LinearOperator,
};
use crate::fock::{basis_up_to, psi, psi_star, FockVector};
use crate::grassmann::{
    degree2_comparison, enumerate_points, forms_of_bilinear, gaussian_binomial, gt_points, local_expectation,
    omega_reconstruction_mismatch, plucker_generators, st_points, tangent_dim_gt, tangent_direction_holds, Degree2Space,
    PluckerKind, PluckerQuadric, SubspaceBasis,
};
use crate::klmw::{
    emit_ideal_generators, kf_compare, n_dominance_components, regular_count, shuffle_span_dim, ExportTarget,
    Straightener,
};
use crate::partitions::{mlex_cmp, Partition};
use crate::symfunc::{det_coeffs_principal_nilpotent, h_var, twist_in_h_basis, MPoly};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

pub struct Suite {
    pub name: &'static str,
    pub summary: &'static str,
    pub params: &'static [Param],
    pub run: fn(&JobSpec) -> Result<SuiteOutput>,
}

const fn param(flag: &'static str, kind: &'static str, default: &'static str, range: &'static str, help: &'static str) -> Param {
    Param {
        flag,
        kind,
        default,
        range,
        help,
    }
}

pub const COMMON: &[Param] = &[
    param("--seed", "u64", "6840307571889143809", "any", "seed for randomized checks"),
    param("--jobs", "usize", "all cores", "≥ 1", "worker threads"),
    param("--out", "path", "stdout", "", "write the report (or exported document) here"),
    param("--format", "json|csv", "json", "", "report format"),
    param("--budget", "u128", "2000000", "≥ 1", "maximum number of enumerated subspaces"),
    param("--timing", "flag", "off", "", "add wall_time_ms to the report"),
];

pub const SUITES: &[Suite] = &[
    Suite {
        name: "clifford",
        summary: "anticommutation relations on finite wedges and on the Fock space",
        params: &[
            param("--n", "usize", "6", "1..=10", "largest finite dimension"),
            param("--size", "usize", "8", "0..=10", "largest |λ| of Fock basis vectors; indices range over [-6, 8]"),
        ],
        run: clifford,
    },
    Suite {
        name: "signs",
        summary: "commutation rules and sign independence for subsets of [n]",
        params: &[param("--n", "usize", "5", "1..=7", "ground set [n]")],
        run: signs,
    },
    Suite {
        name: "pluecker-ideal",
        summary: "degree-2 lattice equality and the ω reconstruction of Plücker quadrics",
        params: &[
            param("--k", "usize", "all listed cases", "1..=n", "subspace dimension"),
            param("--n", "usize", "all listed cases", "1..=7", "ambient dimension"),
        ],
        run: pluecker_ideal,
    },
    Suite {
        name: "divided-powers",
        summary: "divided powers, additivity of ω^T, and the T-shuffle identities on random tensors",
        params: &[param("--n", "usize", "6", "2..=7", "largest ambient dimension")],
        run: divided_powers,
    },
    Suite {
        name: "det-identity",
        summary: "h_k^(n) equals the determinant coefficient det_k^(n)",
        params: &[
            param("--n", "usize", "2,3,4", "1..=6", "twist order"),
            param("--k", "usize", "5", "1..=8", "largest degree k"),
        ],
        run: det_identity,
    },
    Suite {
        name: "shuffle-span",
        summary: "dimension of the adjoint shuffle span against n-regular partition counts",
        params: &[
            param("--n", "usize", "2,3", "1..=6", "shuffle order"),
            param("--size", "usize", "10", "0..=12", "largest degree m"),
        ],
        run: shuffle_span,
    },
    Suite {
        name: "straighten",
        summary: "straightening soundness and memo independence",
        params: &[
            param("--n", "usize", "2,3", "2..=6", "shuffle order"),
            param("--size", "usize", "10", "0..=12", "largest |λ|"),
        ],
        run: straighten_suite,
    },
    Suite {
        name: "kf",
        summary: "D(ζ_n) from Kostka-Foulkes inversion against the straightening d-matrix",
        params: &[
            param("--n", "usize", "2,3", "2..=6", "order of the root of unity"),
            param("--size", "usize", "6", "0..=8", "largest size"),
        ],
        run: kf,
    },
    Suite {
        name: "fpoints",
        summary: "F_p-points of the shuffle and the Schubert-type loci for nilpotent T",
        params: &[
            param("--p", "prime", "2", "2,3,5,7", "field size"),
            param("--dim", "usize", "4", "1..=8", "dimension of V"),
            param("--jordan", "list", "all types", "sums to dim", "Jordan block sizes of T"),
            param("--k", "usize", "all", "0..=dim", "subspace dimension"),
        ],
        run: fpoints,
    },
    Suite {
        name: "tangent",
        summary: "tangent dimensions of G^T against the count-based local expectation",
        params: &[
            param("--p", "prime", "2", "2,3", "field size"),
            param("--dim", "usize", "5", "2..=6", "largest dimension of V"),
            param("--jordan", "list", "all nonzero types", "sums to dim", "Jordan block sizes of T"),
            param("--k", "usize", "all", "1..dim", "subspace dimension"),
        ],
        run: tangent,
    },
    Suite {
        name: "ndominance",
        summary: "n-dominance components against (n-core, size) classes",
        params: &[
            param("--n", "usize", "2,3", "1..=6", "jump length"),
            param("--size", "usize", "8", "0..=12", "largest size"),
        ],
        run: ndominance,
    },
    Suite {
        name: "export-generators",
        summary: "plain-text linear generators for external algebra systems",
        params: &[
            param("--n", "usize", "2", "1..=6", "shuffle order (Fock export)"),
            param("--size", "usize", "2", "0..=10", "degree window (Fock export)"),
            param("--jordan", "list", "none", "", "export the T-shuffle forms of this nilpotent T instead"),
            param("--k", "usize", "2", "0..=dim", "wedge degree (T-shuffle export)"),
        ],
        run: export_generators,
    },
];

/// Rejects flags that are not parameters of `suite`.
pub fn validate(suite: &Suite, f: &Flags) -> std::result::Result<(), String> {
    let given = [
        ("--n", f.n.is_some()),
        ("--k", f.k.is_some()),
        ("--p", f.p.is_some()),
        ("--size", f.size.is_some()),
        ("--dim", f.dim.is_some()),
        ("--jordan", f.jordan.is_some()),
    ];
    for (flag, set) in given {
        if set && !suite.params.iter().any(|p| p.flag == flag) {
            return Err(format!("{flag} is not a parameter of `{}`", suite.name));
        }
    }
    if f.jobs == Some(0) {
        return Err("--jobs must be at least 1".into());
    }
    if f.budget == Some(0) {
        return Err("--budget must be at least 1".into());
    }
    Ok(())
}

fn bounded(flag: &str, v: usize, lo: usize, hi: usize) -> Result<usize> {
    if (lo..=hi).contains(&v) {
        Ok(v)
    } else {
        Err(Error::Precondition(format!("--{flag} must lie in {lo}..={hi}, got {v}")))
    }
}

fn one_or(flag: &str, v: Option<usize>, defaults: &[usize], lo: usize, hi: usize) -> Result<Vec<usize>> {
    match v {
        Some(x) => Ok(vec![bounded(flag, x, lo, hi)?]),
        None => Ok(defaults.to_vec()),
    }
}

type Task<'a> = Box<dyn Fn() -> Result<Check> + Send + Sync + 'a>;

/// Runs independent checks on the current pool, keeping their listed order.
fn run_all(tasks: Vec<Task<'_>>) -> Result<Vec<Check>> {
    tasks.par_iter().map(|t| t()).collect()
}

fn output(checks: Vec<Check>) -> SuiteOutput {
    SuiteOutput {
        checks,
        ..Default::default()
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn sign_of(d: usize) -> i64 {
    if d.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn jordan_text(blocks: &[usize]) -> String {
    blocks.iter().map(|b| b.to_string()).collect::<Vec<_>>().join("+")
}

// ---------------------------------------------------------------- clifford

fn anticommutator(a: (usize, bool), b: (usize, bool), s: u32) -> BTreeMap<u32, i64> {
    let app = |(i, star): (usize, bool), s: u32| if star { psi_star_mask(i, s) } else { psi_mask(i, s) };
    let mut acc = BTreeMap::new();
    for (x, y) in [(a, b), (b, a)] {
        if let Some((n1, s1)) = app(y, s) {
            if let Some((n2, s2)) = app(x, s1) {
                *acc.entry(s2).or_insert(0) += if n1 ^ n2 { -1 } else { 1 };
            }
        }
    }
    acc.retain(|_, c| *c != 0);
    acc
}

fn finite_clifford(n: usize) -> Check {
    let mut count = 0usize;
    let mut failure = Value::Null;
    'outer: for s in 0u32..1 << n {
        for i in 1..=n {
            for j in 1..=n {
                for (si, sj) in [(false, false), (true, true), (false, true)] {
                    count += 1;
                    let got = anticommutator((i, si), (j, sj), s);
                    let want: BTreeMap<u32, i64> =
                        if si != sj && i == j { BTreeMap::from([(s, 1)]) } else { BTreeMap::new() };
                    if got != want {
                        failure = json!({"wedge": elems(s), "i": i, "j": j, "starred": [si, sj]});
                        break 'outer;
                    }
                }
            }
        }
    }
    Check::new(
        format!("exterior n={n}"),
        failure.is_null(),
        json!({"basis_vectors": 1u64 << n, "relations": count, "first_failure": failure}),
    )
}

fn fock_clifford(size: usize, starred: (bool, bool)) -> Check {
    const LO: i64 = -6;
    const HI: i64 = 8;
    let op = |star: bool, i: i64, v: &FockVector<BigInt>| if star { psi_star(i, v) } else { psi(i, v) };
    let basis = basis_up_to(size);
    let mut count = 0usize;
    let mut failure = Value::Null;
    'outer: for m in &basis {
        let v = FockVector::<BigInt>::basis(m.clone(), false);
        for i in LO..=HI {
            for j in LO..=HI {
                count += 1;
                let sum = op(starred.0, i, &op(starred.1, j, &v)).add(&op(starred.1, j, &op(starred.0, i, &v)));
                let want = if starred.0 != starred.1 && i == j { v.clone() } else { FockVector::zero(v.charge(), false) };
                if !sum.sub(&want).is_zero() {
                    failure = json!({"basis": m.to_string(), "i": i, "j": j});
                    break 'outer;
                }
            }
        }
    }
    let name = match starred {
        (false, false) => "fock psi-psi",
        (true, true) => "fock psi*-psi*",
        _ => "fock psi-psi*",
    };
    Check::new(
        name,
        failure.is_null(),
        json!({"basis_vectors": basis.len(), "max_degree": size, "indices": [LO, HI], "relations": count, "first_failure": failure}),
    )
}

fn clifford(job: &JobSpec) -> Result<SuiteOutput> {
    let n = bounded("n", job.flags.n.unwrap_or(6), 1, 10)?;
    let size = bounded("size", job.flags.size.unwrap_or(8), 0, 10)?;
    let mut tasks: Vec<Task> = (1..=n).map(|m| Box::new(move || Ok(finite_clifford(m))) as Task).collect();
    for st in [(false, false), (true, true), (false, true)] {
        tasks.push(Box::new(move || Ok(fock_clifford(size, st))));
    }
    Ok(output(run_all(tasks)?))
}

// ------------------------------------------------------------------- signs

fn all_sets(n: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).map(elems).collect()
}

fn subsets_of(j: &[usize]) -> Vec<Vec<usize>> {
    (0u32..1 << j.len())
        .map(|m| (0..j.len()).filter(|b| m >> b & 1 == 1).map(|b| j[b]).collect())
        .collect()
}

fn exhaustive(name: &str, cases: Vec<(Vec<usize>, Vec<usize>)>, f: impl Fn(&[usize], &[usize]) -> Result<bool>) -> Result<Check> {
    for (a, b) in &cases {
        if !f(a, b)? {
            return Ok(Check::new(name, false, json!({"cases": cases.len(), "first_failure": [a, b]})));
        }
    }
    Ok(Check::new(name, true, json!({"cases": cases.len()})))
}

fn signs(job: &JobSpec) -> Result<SuiteOutput> {
    let n = bounded("n", job.flags.n.unwrap_or(5), 1, 7)?;
    let sets = all_sets(n);
    let pairs: Vec<(Vec<usize>, Vec<usize>)> =
        sets.iter().flat_map(|i| sets.iter().map(move |j| (i.clone(), j.clone()))).collect();
    let nested: Vec<(Vec<usize>, Vec<usize>)> =
        sets.iter().flat_map(|j| subsets_of(j).into_iter().map(move |k| (k, j.clone()))).collect();
    let tasks: Vec<Task> = vec![
        Box::new(|| exhaustive("commutation", pairs.clone(), |i, j| commutation_holds(n, i, j))),
        Box::new(|| exhaustive("split-sign", nested.clone(), |k, j| split_sign_holds(n, k, j))),
        Box::new(|| exhaustive("sign-product", nested.clone(), |k, j| sign_product_constant(n, j, k))),
        Box::new(|| {
            // ε_d(J, K) against every auxiliary I ⊆ [n] with K ⊆ I, |I| = d
            let mut count = 0;
            for d in 0..=n.min(4) {
                for (k, j) in nested.iter().filter(|(k, _)| k.len() <= d) {
                    let e = epsilon(d, j, k)?;
                    for i in sets.iter().filter(|i| i.len() == d && k.iter().all(|x| i.contains(x))) {
                        count += 1;
                        if epsilon_with(j, k, i)? != e {
                            return Ok(Check::new(
                                "epsilon-auxiliary",
                                false,
                                json!({"d": d, "J": j, "K": k, "I": i}),
                            ));
                        }
                    }
                }
            }
            Ok(Check::new("epsilon-auxiliary", true, json!({"comparisons": count, "max_d": n.min(4)})))
        }),
    ];
    Ok(output(run_all(tasks)?))
}

// ---------------------------------------------------------- pluecker-ideal

fn pluecker_ideal(job: &JobSpec) -> Result<SuiteOutput> {
    let gr = |k| PluckerKind::Grassmannian { k };
    let (deg2, omega_cases): (Vec<(PluckerKind, usize)>, Vec<(usize, usize)>) = match (job.flags.k, job.flags.n) {
        (None, None) => (
            vec![(gr(1), 4), (gr(2), 4), (gr(2), 5), (gr(3), 6), (PluckerKind::Incidence { k: 2, l: 1 }, 4)],
            (1..=6).flat_map(|n| (1..=n.min(3)).map(move |k| (k, n))).collect(),
        ),
        (Some(k), Some(n)) => {
            let n = bounded("n", n, 1, 7)?;
            let k = bounded("k", k, 1, n)?;
            (vec![(gr(k), n)], vec![(k, n)])
        }
        _ => return Err(Error::Precondition("--k and --n must be given together".into())),
    };
    let mut tasks: Vec<Task> = Vec::new();
    for (kind, n) in deg2 {
        tasks.push(Box::new(move || {
            let c = degree2_comparison(kind, n)?;
            let name = match kind {
                PluckerKind::Grassmannian { k } => format!("degree2 Gr({k},{n})"),
                PluckerKind::Incidence { k, l } => format!("degree2 incidence ({k},{l},{n})"),
            };
            Ok(Check::new(
                name,
                c.equal,
                json!({"plucker_rank": c.plucker_rank, "kp_rank": c.kp_rank,
                       "plucker_generators": c.plucker_generators, "kp_generators": c.kp_generators}),
            ))
        }));
    }
    for (k, n) in omega_cases {
        tasks.push(Box::new(move || {
            let mismatch = omega_reconstruction_mismatch(k, n)?;
            let count = k_subsets(n, k).len().pow(2) * k;
            Ok(Check::new(
                format!("reconstruction Gr({k},{n})"),
                mismatch.is_none(),
                json!({"quadrics": count, "first_mismatch": mismatch.map(|(a, b, d)| json!({"alpha": a, "beta": b, "d": d}))}),
            ))
        }));
    }
    Ok(output(run_all(tasks)?))
}

// ---------------------------------------------------------- divided-powers

type Q = BigRational;

fn factorial(d: usize) -> i64 {
    (1..=d as i64).product()
}

fn check_divided_powers(seed: u64, nmax: usize, samples: usize) -> Check {
    let mut rng = rng_for(seed, 1);
    for s in 0..samples {
        let n = rng.gen_range(1..=nmax);
        let (a, b) = (rng.gen_range(0..=n), rng.gen_range(0..=n));
        let d = rng.gen_range(1..=3);
        let w = random_two_tensor::<Q>(&mut rng, n, a, b);
        let iterated = (0..d).fold(w.clone(), |acc, _| omega_apply(1, &acc));
        let direct = omega_apply(d, &w).scale(&Q::from_i64(factorial(d)));
        if iterated != direct {
            return Check::new("divided-powers", false, json!({"sample": s, "n": n, "degrees": [a, b], "d": d}));
        }
    }
    Check::new("divided-powers", true, json!({"samples": samples, "max_n": nmax, "max_d": 3, "ring": "Q"}))
}

fn check_additivity<R: Ring>(name: &str, seed: u64, stream: u64, nmax: usize, samples: usize) -> Check {
    let mut rng = rng_for(seed, stream);
    for s in 0..samples {
        let n = rng.gen_range(1..=nmax);
        let (a, b) = (rng.gen_range(0..=n), rng.gen_range(0..=n));
        let d = rng.gen_range(0..=n.min(3));
        let (t1, t2) = (random_op::<R>(&mut rng, n), random_op::<R>(&mut rng, n));
        let w = random_two_tensor::<R>(&mut rng, n, a, b);
        let lhs = omega_t_apply(d, &t1.add(&t2), &w);
        let rhs = (0..=d).fold(crate::exterior::TwoTensor::zero(n, 0, 0), |acc, j| {
            acc.add(&omega_t_apply(j, &t1, &omega_t_apply(d - j, &t2, &w)))
        });
        if !lhs.sub(&rhs).is_zero() {
            return Check::new(name, false, json!({"sample": s, "n": n, "d": d}));
        }
    }
    Check::new(name, true, json!({"pairs": samples, "max_n": nmax}))
}

fn check_expansion(seed: u64, nmax: usize, samples: usize) -> Check {
    let mut rng = rng_for(seed, 4);
    let t = IntPoly::t();
    for s in 0..samples {
        let n = rng.gen_range(1..=nmax);
        let k = rng.gen_range(0..=n);
        let op = random_op::<BigInt>(&mut rng, n).map(|x| IntPoly::constant(x.clone()));
        let tau = if s % 2 == 0 { random_tensor::<BigInt>(&mut rng, n, k) } else { decomposable(&mut rng, n, k) };
        let tau = tau.terms().fold(ExtTensor::zero(n, k), |mut p, (m, c)| {
            p.add_term(m, IntPoly::constant(c.clone()));
            p
        });
        let lhs = wedge_power(&LinearOperator::identity(n).add(&op.scale(&t)), &tau);
        let mut rhs = tau.clone();
        for d in 1..=k {
            rhs = rhs.add(&t_shuffle(d, &op, &tau).scale(&IntPoly::monomial(BigInt::one(), d)));
        }
        if !lhs.sub(&rhs).is_zero() {
            return Check::new("t-shuffle expansion", false, json!({"sample": s, "n": n, "k": k}));
        }
    }
    Check::new("t-shuffle expansion", true, json!({"tensors": samples, "max_n": nmax, "ring": "Z[t]"}))
}

/// `ω^T_d(τ) − (−1)^d Σ_I e_I ∧ sh^T_d(τ) ⊗ ψ*_I(τ)`: zero on decomposable
/// `τ`; on arbitrary `τ` it equals, coordinate by coordinate, an explicit
/// integer combination of Plücker quadrics evaluated at `τ`.
fn check_two_tensor_identity(seed: u64, nmax: usize, operators: usize, per_op: usize) -> Result<Check> {
    const NAME: &str = "t-shuffle two-tensor";
    let mut rng = rng_for(seed, 5);
    let draws: Vec<(usize, usize, LinearOperator<BigInt>, u64)> = (0..operators)
        .map(|i| {
            let n = rng.gen_range(2..=nmax);
            let k = rng.gen_range(1..=n);
            (n, k, random_op::<BigInt>(&mut rng, n), i as u64)
        })
        .collect();
    let shapes: BTreeSet<(usize, usize)> = draws.iter().map(|(n, k, _, _)| (*n, *k)).collect();
    let lattices: BTreeMap<(usize, usize), (Degree2Space, HnfBuilder)> = shapes
        .into_par_iter()
        .map(|(n, k)| {
            let kind = PluckerKind::Grassmannian { k };
            let space = Degree2Space::new(kind, n)?;
            let mut h = HnfBuilder::new(space.dim());
            for v in space.vectors(&plucker_generators(kind, n)?) {
                h.insert(v)?;
            }
            Ok(((n, k), (space, h)))
        })
        .collect::<Result<_>>()?;
    let results: Vec<Result<Option<Value>>> = draws
        .par_iter()
        .map(|(n, k, t, i)| -> Result<Option<Value>> {
            let (n, k) = (*n, *k);
            let (space, hnf) = &lattices[&(n, k)];
            let mut trng = rng_for(seed, 100 + i);
            let taus: Vec<(bool, ExtTensor<BigInt>)> = (0..per_op)
                .map(|j| {
                    if j % 2 == 0 {
                        (true, decomposable(&mut trng, n, k))
                    } else {
                        (false, random_tensor(&mut trng, n, k))
                    }
                })
                .collect();
            for d in 1..=k {
                let sign = BigInt::from(sign_of(d));
                let defects = forms_of_bilinear(PluckerKind::Grassmannian { k }, n, |s, u| {
                    let (x, y) = (ExtTensor::from_mask(n, s), ExtTensor::from_mask(n, u));
                    omega_t(d, t, &x, &y).sub(&two_tensor_prop_rhs(d, t, &x, &y).scale(&sign))
                })?;
                let mut witnesses: BTreeMap<(u32, u32), PluckerQuadric> = BTreeMap::new();
                for (key, q) in &defects {
                    let Some(coords) = hnf.express(&space.vector(q)) else {
                        return Ok(Some(json!({"operator": i, "n": n, "k": k, "d": d, "outside_plucker_lattice": q.to_string()})));
                    };
                    let mut w = PluckerQuadric::zero(space.kind());
                    for (c, mult) in coords {
                        w.add_scaled(&space.quadric(hnf.pivot_row(c).expect("pivot")), &mult);
                    }
                    witnesses.insert(*key, w);
                }
                for (j, (dec, tau)) in taus.iter().enumerate() {
                    let direct = omega_t(d, t, tau, tau).sub(&two_tensor_prop_rhs(d, t, tau, tau).scale(&sign));
                    let fail = |why: &str| Some(json!({"operator": i, "n": n, "k": k, "d": d, "tensor": j, "reason": why}));
                    if *dec && !direct.is_zero() {
                        return Ok(fail("nonzero on a decomposable tensor"));
                    }
                    let keys: BTreeSet<(u32, u32)> = direct.terms().map(|(key, _)| key).chain(witnesses.keys().copied()).collect();
                    for key in keys {
                        let got = direct.coeff(&elems(key.0), &elems(key.1));
                        let want = witnesses.get(&key).map(|w| w.eval(tau, tau)).unwrap_or_default();
                        if got != want {
                            return Ok(fail("coordinate differs from its Plücker witness"));
                        }
                    }
                }
            }
            Ok(None)
        })
        .collect();
    for r in results {
        if let Some(w) = r? {
            return Ok(Check::new(NAME, false, w));
        }
    }
    Ok(Check::new(
        NAME,
        true,
        json!({"operators": operators, "tensors": operators * per_op, "decomposable": operators * per_op.div_ceil(2), "max_n": nmax}),
    ))
}

fn divided_powers(job: &JobSpec) -> Result<SuiteOutput> {
    let nmax = bounded("n", job.flags.n.unwrap_or(6), 2, 7)?;
    let seed = job.seed;
    let small = nmax.min(5);
    let tasks: Vec<Task> = vec![
        Box::new(move || Ok(check_divided_powers(seed, nmax, 200))),
        Box::new(move || Ok(check_additivity::<Q>("omega-t additivity over Q", seed, 2, small, 100))),
        Box::new(move || Ok(check_additivity::<Fp<5>>("omega-t additivity over F5", seed, 3, small, 100))),
        Box::new(move || Ok(check_expansion(seed, nmax, 200))),
        Box::new(move || check_two_tensor_identity(seed, nmax, 10, 20)),
    ];
    Ok(output(run_all(tasks)?))
}

// ------------------------------------------------------------ det-identity

fn det_identity(job: &JobSpec) -> Result<SuiteOutput> {
    let ns = one_or("n", job.flags.n, &[2, 3, 4], 1, 6)?;
    let kmax = bounded("k", job.flags.k.unwrap_or(5), 1, 8)?;
    let mut tasks: Vec<Task> = ns
        .into_iter()
        .map(|n| {
            Box::new(move || {
                let det = det_coeffs_principal_nilpotent(n, kmax);
                for (i, dk) in det.iter().enumerate() {
                    let h = twist_in_h_basis(n, i + 1)?;
                    if &h != dk {
                        return Ok(Check::new(
                            format!("n={n}"),
                            false,
                            json!({"k": i + 1, "twist": h.display_with("h"), "det": dk.display_with("h")}),
                        ));
                    }
                }
                Ok(Check::new(
                    format!("n={n}"),
                    true,
                    json!({"max_k": kmax, "h_1^(n)": det[0].display_with("h")}),
                ))
            }) as Task
        })
        .collect();
    if job.flags.n.is_none() {
        tasks.push(Box::new(|| {
            let expected: MPoly<BigInt> = h_var::<BigInt>(2).scale(&BigInt::from(2)) - h_var::<BigInt>(1).pow(2);
            let got = twist_in_h_basis(2, 1)?;
            Ok(Check::new("witness h_1^(2)", got == expected, json!({"value": got.display_with("h")})))
        }));
    }
    Ok(output(run_all(tasks)?))
}

// ------------------------------------------------------------ shuffle-span

fn shuffle_span(job: &JobSpec) -> Result<SuiteOutput> {
    let ns = one_or("n", job.flags.n, &[2, 3], 1, 6)?;
    let size = bounded("size", job.flags.size.unwrap_or(10), 0, 12)?;
    let tasks: Vec<Task> = ns
        .into_iter()
        .flat_map(|n| (0..=size).map(move |m| (n, m)))
        .map(|(n, m)| {
            Box::new(move || {
                let dim = shuffle_span_dim(n, m)?;
                let reg = regular_count(n, m);
                let total = Partition::count(m);
                Ok(Check::new(
                    format!("n={n} m={m}"),
                    dim + reg == total,
                    json!({"span_dim": dim, "regular": reg, "partitions": total}),
                ))
            }) as Task
        })
        .collect();
    Ok(output(run_all(tasks)?))
}

// -------------------------------------------------------------- straighten

fn soundness(n: usize, size: usize) -> Result<Check> {
    let engine = Straightener::new(n)?;
    let name = format!("soundness n={n}");
    let (mut inputs, mut longest) = (0usize, 0usize);
    for m in 0..=size {
        for lambda in Partition::all_of_size(m) {
            inputs += 1;
            let r = engine.straighten(&lambda)?;
            longest = longest.max(r.trace.len());
            let regular = lambda.is_n_regular(n);
            let core = lambda.n_core(n);
            for nu in r.coeffs.keys() {
                let problem = if !nu.is_n_regular(n) {
                    Some("key is not n-regular")
                } else if nu.n_core(n) != core || nu.size() != m {
                    Some("key leaves the (n-core, size) class")
                } else if regular && nu != &lambda {
                    Some("regular input is not fixed")
                } else if !regular && mlex_cmp(nu, &lambda) != Ordering::Less {
                    Some("key is not mlex-lower")
                } else if !regular && (nu == &lambda || !lambda.transpose().dominates(&nu.transpose())) {
                    Some("key is not strictly dominance-lower")
                } else {
                    None
                };
                if let Some(why) = problem {
                    return Ok(Check::new(name, false, json!({"lambda": lambda, "key": nu, "reason": why})));
                }
            }
        }
    }
    Ok(Check::new(name, true, json!({"inputs": inputs, "max_size": size, "longest_trace": longest})))
}

fn memo_agreement(n: usize, size: usize) -> Result<Check> {
    let (a, b) = (Straightener::new(n)?, Straightener::without_memo(n)?);
    let name = format!("memo-agreement n={n}");
    let mut inputs = 0;
    for m in 0..=size {
        for lambda in Partition::all_of_size(m) {
            inputs += 1;
            if a.straighten(&lambda)?.coeffs != b.straighten(&lambda)?.coeffs {
                return Ok(Check::new(name, false, json!({"lambda": lambda})));
            }
        }
    }
    Ok(Check::new(name, true, json!({"inputs": inputs, "max_size": size})))
}

fn straighten_suite(job: &JobSpec) -> Result<SuiteOutput> {
    let ns = one_or("n", job.flags.n, &[2, 3], 2, 6)?;
    let size = bounded("size", job.flags.size.unwrap_or(10), 0, 12)?;
    let mut tasks: Vec<Task> = Vec::new();
    for n in ns {
        tasks.push(Box::new(move || soundness(n, size)));
        tasks.push(Box::new(move || memo_agreement(n, size.min(8))));
    }
    Ok(output(run_all(tasks)?))
}

// ---------------------------------------------------------------------- kf

fn kf(job: &JobSpec) -> Result<SuiteOutput> {
    let ns = one_or("n", job.flags.n, &[2, 3], 2, 6)?;
    let size = bounded("size", job.flags.size.unwrap_or(6), 0, 8)?;
    let tasks: Vec<Task> = ns
        .into_iter()
        .flat_map(|n| (0..=size).map(move |s| (n, s)))
        .map(|(n, s)| {
            Box::new(move || {
                let c = kf_compare(n, s)?;
                let entries: Vec<Value> = c
                    .entries
                    .iter()
                    .filter(|e| !e.straightening.is_zero() || e.d_at_root != "0")
                    .map(|e| Value::from(format!("D[{}][{}] = {}", e.lambda, e.nu, e.d_at_root)))
                    .collect();
                let bad = |e: &Option<crate::klmw::KfEntry>| {
                    e.as_ref().map(|e| {
                        json!({"lambda": e.lambda.to_string(), "nu": e.nu.to_string(), "d_poly": e.d_poly, "d_at_root": e.d_at_root,
                               "straightening": e.straightening.to_string()})
                    })
                };
                Ok(Check::new(
                    format!("n={n} size={s}"),
                    c.matches(),
                    json!({"entries": c.entries.len(), "nonzero": entries,
                           "non_integer": bad(&c.non_integer), "first_discrepancy": bad(&c.first_discrepancy)}),
                ))
            }) as Task
        })
        .collect();
    Ok(output(run_all(tasks)?))
}

// ----------------------------------------------------------------- fpoints

macro_rules! for_prime {
    ($p:expr, $f:ident ( $($arg:expr),* )) => {
        match $p {
            2 => $f::<2>($($arg),*),
            3 => $f::<3>($($arg),*),
            5 => $f::<5>($($arg),*),
            7 => $f::<7>($($arg),*),
            other => Err(Error::Precondition(format!("--p must be one of 2, 3, 5, 7, got {other}"))),
        }
    };
}

/// Jordan types to scan: the given one or every partition of `dim`.
fn jordan_types(f: &Flags, default_dim: usize, max_dim: usize) -> Result<(usize, Vec<Vec<usize>>)> {
    match &f.jordan {
        Some(blocks) => {
            if blocks.contains(&0) {
                return Err(Error::Precondition("Jordan blocks must be positive".into()));
            }
            let dim: usize = blocks.iter().sum();
            if let Some(d) = f.dim {
                if d != dim {
                    return Err(Error::Precondition(format!("--jordan sums to {dim}, but --dim is {d}")));
                }
            }
            let mut b = blocks.clone();
            b.sort_unstable_by(|x, y| y.cmp(x));
            Ok((bounded("dim", dim, 1, max_dim)?, vec![b]))
        }
        None => {
            let dim = bounded("dim", f.dim.unwrap_or(default_dim), 1, max_dim)?;
            Ok((dim, Partition::all_of_size(dim).into_iter().map(|p| p.parts().to_vec()).collect()))
        }
    }
}

fn fpoints_rows<const P: u64>(
    dim: usize,
    types: &[Vec<usize>],
    ks: &[usize],
    budget: u128,
) -> Result<(Vec<Check>, Vec<Vec<String>>)> {
    let mut checks = Vec::new();
    let counts: Vec<(usize, usize)> = ks
        .par_iter()
        .map(|&k| Ok((k, enumerate_points::<P>(dim, k, budget)?.len())))
        .collect::<Result<_>>()?;
    for (k, c) in counts {
        let expected = gaussian_binomial(dim, k, P);
        checks.push(Check::new(
            format!("count Gr({k},{dim})"),
            BigInt::from(c) == expected,
            json!({"enumerated": c, "gaussian_binomial": expected.to_string()}),
        ));
    }
    let cases: Vec<(&Vec<usize>, usize)> = types.iter().flat_map(|b| ks.iter().map(move |&k| (b, k))).collect();
    let rows: Vec<(Check, Vec<String>)> = cases
        .par_iter()
        .map(|&(blocks, k)| {
            let t = LinearOperator::<Fp<P>>::jordan(blocks);
            let mut gt = gt_points(&t, k, budget)?;
            let mut st = st_points(&t, k, budget)?;
            gt.sort();
            st.sort();
            let equal = gt == st;
            let gr = gaussian_binomial(dim, k, P);
            let jt = jordan_text(blocks);
            let mut witness = json!({"gr": gr.to_string(), "gt": gt.len(), "st": st.len()});
            if !equal {
                let only: Vec<String> = gt.iter().filter(|u| st.binary_search(u).is_err()).take(3).map(|u| u.to_text()).collect();
                let only_st: Vec<String> = st.iter().filter(|u| gt.binary_search(u).is_err()).take(3).map(|u| u.to_text()).collect();
                witness["only_gt"] = json!(only);
                witness["only_st"] = json!(only_st);
            }
            let row = vec![
                P.to_string(),
                dim.to_string(),
                k.to_string(),
                jt.clone(),
                gr.to_string(),
                gt.len().to_string(),
                st.len().to_string(),
                equal.to_string(),
            ];
            Ok((Check::new(format!("J=({jt}) k={k}"), equal, witness), row))
        })
        .collect::<Result<_>>()?;
    let (row_checks, table): (Vec<Check>, Vec<Vec<String>>) = rows.into_iter().unzip();
    checks.extend(row_checks);
    Ok((checks, table))
}

fn fpoints(job: &JobSpec) -> Result<SuiteOutput> {
    let (dim, types) = jordan_types(&job.flags, 4, 8)?;
    let ks = match job.flags.k {
        Some(k) => vec![bounded("k", k, 0, dim)?],
        None => (0..=dim).collect(),
    };
    let p = job.flags.p.unwrap_or(2);
    let (checks, rows) = for_prime!(p, fpoints_rows(dim, &types, &ks, job.budget))?;
    Ok(SuiteOutput {
        checks,
        table: Some((vec!["p", "n", "k", "jordan_type", "gr", "gt", "st", "equal"], rows)),
        document: None,
    })
}

// ----------------------------------------------------------------- tangent

fn tangent_case<const P: u64>(blocks: &[usize], k: usize, budget: u128) -> Result<Check> {
    let t = LinearOperator::<Fp<P>>::jordan(blocks);
    let gt = gt_points(&t, k, budget)?;
    let mut best: Option<(i64, &SubspaceBasis<P>, usize, u32)> = None;
    for u in &gt {
        let td = tangent_dim_gt(u, &t)?;
        let ex = local_expectation(u, &gt);
        let excess = td as i64 - ex as i64;
        if best.as_ref().is_none_or(|b| excess > b.0) {
            best = Some((excess, u, td, ex));
        }
    }
    let name = format!("J=({}) k={k}", jordan_text(blocks));
    let (excess, u, td, ex) = best.ok_or_else(|| Error::Fault("G^T has no points".into()))?;
    Ok(Check::new(
        name,
        excess > 0,
        json!({"points": gt.len(), "max_excess": excess, "witness": {"U": u.to_text(), "tangent_dim": td, "local_expectation": ex}}),
    ))
}

fn jn_direction<const P: u64>(n: usize, k: usize) -> Result<Check> {
    let t = LinearOperator::<Fp<P>>::jordan(&[n]);
    let set: Vec<usize> = (1..=k).collect();
    let u = SubspaceBasis::<P>::coordinate(n, &set)?;
    let mut phi = vec![vec![Fp::<P>::zero(); n]; k];
    phi[k - 1][k] = Fp::one();
    let holds = tangent_direction_holds(&u, &t, &phi);
    let td = tangent_dim_gt(&u, &t)?;
    Ok(Check::new(
        format!("J_{n} direction k={k}"),
        holds && td >= 1,
        json!({"U": u.to_text(), "direction": format!("e_{k} -> e_{}", k + 1), "tangent_dim": td}),
    ))
}

fn tangent_checks<const P: u64>(cases: &[(Vec<usize>, usize)], budget: u128) -> Result<Vec<Check>> {
    let mut checks: Vec<Check> = cases.par_iter().map(|(b, k)| tangent_case::<P>(b, *k, budget)).collect::<Result<_>>()?;
    let single: Vec<(usize, usize)> = cases.iter().filter(|(b, _)| b.len() == 1).map(|(b, k)| (b[0], *k)).collect();
    for (n, k) in single {
        checks.push(jn_direction::<P>(n, k)?);
    }
    Ok(checks)
}

fn tangent(job: &JobSpec) -> Result<SuiteOutput> {
    let p = job.flags.p.unwrap_or(2);
    if p != 2 && p != 3 {
        return Err(Error::Precondition(format!("--p must be 2 or 3, got {p}")));
    }
    let types: Vec<Vec<usize>> = match &job.flags.jordan {
        Some(_) => jordan_types(&job.flags, 5, 6)?.1,
        None => {
            let dmax = bounded("dim", job.flags.dim.unwrap_or(5), 2, 6)?;
            (2..=dmax)
                .flat_map(Partition::all_of_size)
                .map(|p| p.parts().to_vec())
                .filter(|b| b.iter().any(|&x| x > 1))
                .collect()
        }
    };
    if types.iter().any(|b| b.iter().all(|&x| x == 1)) {
        return Err(Error::Precondition("T must be nonzero".into()));
    }
    let mut cases = Vec::new();
    for b in types {
        let d: usize = b.iter().sum();
        let ks: Vec<usize> = match job.flags.k {
            Some(k) => vec![bounded("k", k, 1, d - 1)?],
            None => (1..d).collect(),
        };
        cases.extend(ks.into_iter().map(|k| (b.clone(), k)));
    }
    let checks = match p {
        2 => tangent_checks::<2>(&cases, job.budget)?,
        _ => tangent_checks::<3>(&cases, job.budget)?,
    };
    Ok(output(checks))
}

// -------------------------------------------------------------- ndominance

fn ndominance(job: &JobSpec) -> Result<SuiteOutput> {
    let ns = one_or("n", job.flags.n, &[2, 3], 1, 6)?;
    let size = bounded("size", job.flags.size.unwrap_or(8), 0, 12)?;
    let tasks: Vec<Task> = ns
        .into_iter()
        .flat_map(|n| (0..=size).map(move |m| (n, m)))
        .map(|(n, m)| {
            Box::new(move || {
                let r = n_dominance_components(n, m)?;
                let splits: Vec<Value> = r.splits.iter().map(|(core, w)| json!({"core": core, "witnesses": w})).collect();
                Ok(Check::new(
                    format!("n={n} size={m}"),
                    r.coincide(),
                    json!({"components": r.components.len(), "classes": r.classes.len(), "splits": splits}),
                ))
            }) as Task
        })
        .collect();
    Ok(output(run_all(tasks)?))
}

// ------------------------------------------------------- export-generators

fn export_generators(job: &JobSpec) -> Result<SuiteOutput> {
    let f = &job.flags;
    let target = match &f.jordan {
        Some(_) => {
            if f.n.is_some() || f.size.is_some() {
                return Err(Error::Precondition("--jordan cannot be combined with --n or --size".into()));
            }
            let (dim, types) = jordan_types(f, 4, 12)?;
            let k = bounded("k", f.k.unwrap_or(2), 0, dim)?;
            ExportTarget::TShuffle {
                t: LinearOperator::<BigInt>::jordan(&types[0]),
                k,
            }
        }
        None => {
            if f.k.is_some() {
                return Err(Error::Precondition("--k needs --jordan".into()));
            }
            ExportTarget::SatoShuffle {
                n: bounded("n", f.n.unwrap_or(2), 1, 6)?,
                max_degree: bounded("size", f.size.unwrap_or(2), 0, 10)?,
            }
        }
    };
    let doc = emit_ideal_generators(&target)?;
    let vars = doc.lines().filter(|l| l.starts_with("var:")).count();
    let gens = doc.lines().filter(|l| l.starts_with("gen:")).count();
    let digest: String = Sha256::digest(doc.as_bytes()).iter().map(|b| format!("{b:02x}")).collect();
    Ok(SuiteOutput {
        checks: vec![Check::new(
            "export",
            true,
            json!({"header": doc.lines().next(), "variables": vars, "generators": gens, "sha256": digest}),
        )],
        table: None,
        document: Some(doc),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_seed_matches_constant() {
        let seed = COMMON.iter().find(|p| p.flag == "--seed").unwrap();
        assert_eq!(seed.default, super::super::DEFAULT_SEED.to_string());
    }
}
