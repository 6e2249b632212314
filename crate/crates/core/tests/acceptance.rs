//! Acceptance gate: twelve end-to-end checks, one per published claim the
//! library must reproduce exactly. Each test prints a single pass/fail line.

use std::collections::BTreeSet;
use std::panic::AssertUnwindSafe;
use std::time::Instant;

use num::{BigRational, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cherednik::characters::{chhat_delta, chsph_delta, dim_irrep, fake_degree};
use cherednik::kgroup::{
    ind_matrix, joint_injectivity, order_sm, order_sstar, recover_from_removals, res_matrix,
    Injectivity,
};
use cherednik::linalg::QMatrix;
use cherednik::partition::Dominance;
use cherednik::params::{dominant_reduce, is_spherical, sl_act, Params, Sphericity};
use cherednik::perm::Perm;
use cherednik::{bridge, canonical, crystal, fock, kl};
use cherednik::{Caps, Charge, Kappa, LaurentPoly, Multipartition};

type Check = Result<(), String>;

fn core<T>(r: cherednik::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn gate(num: u32, name: &str, body: impl FnOnce() -> Check) {
    let start = Instant::now();
    match std::panic::catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            println!("criterion {num:02} ({name}): pass [{:.2?}]", start.elapsed());
        }
        Ok(Err(msg)) => {
            println!("criterion {num:02} ({name}): fail [{msg}]");
            panic!("criterion {num:02} failed: {msg}");
        }
        Err(cause) => {
            println!("criterion {num:02} ({name}): fail [panic]");
            std::panic::resume_unwind(cause);
        }
    }
}

fn charge(entries: &[i64]) -> Charge {
    Charge::new(entries.to_vec()).expect("fixed charge")
}

fn charge_for_level(l: usize) -> Charge {
    match l {
        1 => charge(&[0]),
        2 => charge(&[1, 0]),
        _ => charge(&[2, 1, 0]),
    }
}

#[test]
fn criterion_01_b2_wall_certificate() {
    gate(1, "b2 wall certificate", || {
        let p = core(Params::new(
            2,
            Kappa::Symbolic,
            charge(&[-1, 0]),
            None,
        ))?;
        match core(is_spherical(&p))? {
            Sphericity::AsphericalWall {
                u: 1,
                k: 1,
                m: 1,
                k_hat: 1,
            } => Ok(()),
            other => Err(format!("expected the (1,1,1) wall, got {other:?}")),
        }
    });
}

#[test]
fn criterion_02_sphericity_is_orbit_stable() {
    gate(2, "sphericity stable on permutation orbits", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let kappas = [
            Kappa::Symbolic,
            Kappa::rational(1, 2),
            Kappa::rational(2, 3),
        ];
        for trial in 0..200 {
            let l = rng.gen_range(1..=3usize);
            let n = rng.gen_range(1..=4u64);
            let s = charge(
                &(0..l)
                    .map(|_| rng.gen_range(-4..=4i64))
                    .collect::<Vec<_>>(),
            );
            let kappa = kappas[rng.gen_range(0..kappas.len())].clone();
            let p = core(Params::new(n, kappa, s, None))?;
            let base = matches!(core(is_spherical(&p))?, Sphericity::Spherical);
            for w in Perm::all(l) {
                let moved = core(sl_act(&w, &p))?;
                let outcome = matches!(core(is_spherical(&moved))?, Sphericity::Spherical);
                ensure!(
                    outcome == base,
                    "trial {trial}: outcome changed under {:?} at {:?}",
                    w.to_one_based(),
                    p
                );
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_03_character_routes_agree() {
    gate(3, "spherical and hat characters agree", || {
        let caps = Caps::default();
        for l in 1..=3usize {
            let s = charge_for_level(l);
            for n in 0..=5u64 {
                for kappa in [Kappa::Symbolic, Kappa::rational(5, 3)] {
                    let p = core(Params::new(n.max(1), kappa, s.clone(), None))?;
                    for lambda in core(Multipartition::enumerate(l, n, &caps))? {
                        if lambda.size() == 0 {
                            continue;
                        }
                        let q = core(Params::new(lambda.size(), p.kappa.clone(), s.clone(), None))?;
                        let a = core(chhat_delta(&lambda, &q))?;
                        let b = core(chsph_delta(&lambda, &q))?;
                        ensure!(
                            a.equivalent(&b),
                            "character routes differ at {lambda} with level {l}"
                        );
                    }
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_04_fake_degree_mass() {
    gate(4, "fake degrees sum to the graded regular size", || {
        let caps = Caps::default();
        for l in 1..=3usize {
            for n in 1..=4u64 {
                let mut total = LaurentPoly::zero();
                for tau in core(Multipartition::enumerate(l, n, &caps))? {
                    let f = fake_degree(&tau.star());
                    let d = BigRational::from_integer(dim_irrep(&tau));
                    total = &total + &f.scaled(&d);
                }
                let mut expected = LaurentPoly::one();
                for i in 1..=n as i64 {
                    let mut factor = LaurentPoly::zero();
                    for t in 0..i * l as i64 {
                        factor = &factor + &LaurentPoly::monomial_int(1, t);
                    }
                    expected = &expected * &factor;
                }
                ensure!(
                    total == expected,
                    "mass identity fails at level {l}, size {n}"
                );
            }
        }
        Ok(())
    });
}

/// Coordinates of a K-group vector against an explicit label list.
fn coords(
    v: &cherednik::kgroup::KVector,
    labels: &[Multipartition],
) -> Vec<BigRational> {
    labels.iter().map(|m| v.get(m)).collect()
}

#[test]
fn criterion_05_joint_injectivity_and_degeneration() {
    gate(5, "restriction plus character is injective", || {
        let caps = Caps::default();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut sampled = 0usize;
        let mut attempts = 0usize;
        while sampled < 20 {
            attempts += 1;
            ensure!(attempts < 10000, "could not sample 20 spherical parameters");
            let l = rng.gen_range(1..=3usize);
            let mut entries: Vec<i64> = Vec::new();
            while entries.len() < l {
                let x = rng.gen_range(-9..=9i64);
                if !entries.contains(&x) {
                    entries.push(x);
                }
            }
            let s = charge(&entries);
            // The wall families grow with the size, so the parameter must be
            // spherical at every size it is tested at.
            let mut spherical_throughout = true;
            for n in 1..=4u64 {
                let probe = core(Params::new(n, Kappa::Symbolic, s.clone(), None))?;
                if !matches!(core(is_spherical(&probe))?, Sphericity::Spherical) {
                    spherical_throughout = false;
                    break;
                }
            }
            if !spherical_throughout {
                continue;
            }
            sampled += 1;
            for n in 1..=4u64 {
                let p = core(Params::new(n, Kappa::Symbolic, s.clone(), None))?;
                match core(joint_injectivity(&p, &caps))? {
                    Injectivity::Injective => {}
                    Injectivity::Kernel(v) => {
                        return Err(format!(
                            "spherical parameter {entries:?} dropped rank at size {n}: {:?}",
                            coords(&v, &core(Multipartition::enumerate(l, n, &caps))?)
                        ));
                    }
                }
            }
        }

        // The integer degeneration: at kappa = 1 the combined map loses rank
        // on an explicit two-row family, and the witness really is killed by
        // the restriction matrix.
        let p = core(Params::new(2, Kappa::rational(1, 1), charge(&[1, 0]), None))?;
        let witness = match core(joint_injectivity(&p, &caps))? {
            Injectivity::Kernel(v) => v,
            Injectivity::Injective => {
                return Err("no rank drop at the kappa = 1 degeneration".into())
            }
        };
        ensure!(witness.len() > 0, "empty kernel witness");
        let res = core(res_matrix(2, 2, &caps))?;
        let image = core(res.matrix.apply(&coords(&witness, &res.col_labels)))?;
        ensure!(
            image.iter().all(|x| x.is_zero()),
            "kernel witness is not killed by restriction"
        );
        Ok(())
    });
}

#[test]
fn criterion_06_residue_transpose_and_order_implication() {
    gate(6, "starred residues and order transport", || {
        let caps = Caps::default();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10 {
            let l = rng.gen_range(1..=3usize);
            let s = charge(
                &(0..l)
                    .map(|_| rng.gen_range(-3..=3i64))
                    .collect::<Vec<_>>(),
            );
            let raw: Vec<i64> = (0..l).map(|_| rng.gen_range(0..=4i64)).collect();
            let (_, m) = dominant_reduce(&raw);
            let s_star = s.star();
            for n in 1..=4u64 {
                let labels = core(Multipartition::enumerate(l, n, &caps))?;
                for lambda in &labels {
                    let plain = lambda.residue_multiset(s.as_slice());
                    let starred = lambda.star().residue_multiset(s_star.as_slice());
                    let negated: std::collections::BTreeMap<i64, usize> =
                        starred.into_iter().map(|(r, c)| (-r, c)).collect();
                    ensure!(
                        plain == negated,
                        "residue multiset not negated under star at {lambda}"
                    );
                }
                for a in &labels {
                    for b in &labels {
                        if core(order_sstar(&a.star(), &b.star(), &s_star))? {
                            ensure!(
                                core(order_sm(a, b, &s, &m))?,
                                "order implication fails for {a} vs {b} at s={:?}, m={m:?}",
                                s.as_slice()
                            );
                        }
                    }
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_07_quantum_relations() {
    gate(7, "quantum relations on low degrees", || {
        let caps = Caps::default();
        for l in 1..=3usize {
            let s = charge_for_level(l);
            let lo = s.as_slice().iter().min().copied().unwrap() - 3;
            let hi = s.as_slice().iter().max().copied().unwrap() + 3;
            let report = core(fock::verify_relations(&s, 3, lo, hi, &caps))?;
            ensure!(
                report.failure.is_none(),
                "relation failure at level {l}: {}",
                report.failure.unwrap_or_default()
            );
            ensure!(report.checks > 0, "no identities checked at level {l}");
        }
        Ok(())
    });
}

#[test]
fn criterion_08_singular_census_matches_kernel() {
    gate(8, "crystal census equals kernel dimension", || {
        let caps = Caps::default();
        let charges: [(usize, [&[i64]; 3]); 3] = [
            (1, [&[0], &[2], &[-1]]),
            (2, [&[1, 0], &[3, 1], &[0, -2]]),
            (3, [&[2, 1, 0], &[4, 2, 1], &[1, 0, -2]]),
        ];
        for (l, triple) in charges {
            for entries in triple {
                let s = charge(entries);
                for n in 1..=4u64 {
                    let census = core(Multipartition::enumerate(l, n, &caps))?
                        .iter()
                        .filter(|m| crystal::is_singular(m, &s))
                        .count();
                    let dim = core(fock::singular_space_dim(&s, n, &caps))?;
                    ensure!(
                        census == dim,
                        "census {census} != kernel dimension {dim} at s={entries:?}, n={n}"
                    );
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_09_dmatrix_invariants() {
    gate(9, "decomposition matrix invariants", || {
        let caps = Caps::default();

        // The bar involution squares to the identity.
        let s = charge(&[1, 0]);
        for n in 0..=3u64 {
            for lambda in core(Multipartition::enumerate(2, n, &caps))? {
                let x = core(fock::FockVector::basis(s.clone(), lambda.clone()))?;
                let once = core(canonical::bar(&x, &caps))?;
                let twice = core(canonical::bar(&once, &caps))?;
                ensure!(twice == x, "bar does not square to the identity at {lambda}");
            }
        }

        // Unitriangularity, v-positivity, block confinement, dominance.
        for entries in [[1i64, 0], [3, 1]] {
            let s = charge(&entries);
            for n in 1..=4u64 {
                let d = core(canonical::d_matrix(&s, n, &caps))?;
                let labels = d.labels();
                let blocks = d.blocks();
                let mut block_of = vec![usize::MAX; labels.len()];
                for (b, block) in blocks.iter().enumerate() {
                    for &i in block {
                        block_of[i] = b;
                    }
                }
                for r in 0..labels.len() {
                    for c in 0..labels.len() {
                        let entry = d.entry(r, c);
                        if r == c {
                            ensure!(entry.is_one(), "diagonal entry is not 1 at {}", labels[r]);
                            continue;
                        }
                        if entry.is_zero() {
                            continue;
                        }
                        ensure!(
                            block_of[r] == block_of[c],
                            "entry escapes its residue block: {} vs {}",
                            labels[r],
                            labels[c]
                        );
                        ensure!(
                            entry.min_exp().unwrap_or(0) >= 1,
                            "off-diagonal entry not in vZ[v] at {} vs {}",
                            labels[r],
                            labels[c]
                        );
                        ensure!(
                            entry.terms().all(|(_, coeff)| coeff.denom().is_one()),
                            "non-integral coefficient at {} vs {}",
                            labels[r],
                            labels[c]
                        );
                        ensure!(
                            labels[r].dominance_cmp(&labels[c]) == Dominance::Less,
                            "nonzero entry does not point down the dominance order"
                        );
                    }
                }

                // The cap-diagram route and the quasi-R-matrix route agree.
                for block in &blocks {
                    for &c in block {
                        for &r in block {
                            let via_caps = core(kl::cap_d_entry(&labels[r], &labels[c], &s))?;
                            ensure!(
                                via_caps == d.entry(r, c),
                                "cap route disagrees at {} vs {}",
                                labels[r],
                                labels[c]
                            );
                        }
                    }
                }
            }
        }

        // Level one and size one are identity matrices.
        for n in 1..=4u64 {
            let d = core(canonical::d_matrix(&charge(&[0]), n, &caps))?;
            for r in 0..d.labels().len() {
                for c in 0..d.labels().len() {
                    let expected = r == c;
                    ensure!(
                        d.entry(r, c).is_one() == expected
                            && d.entry(r, c).is_zero() != expected,
                        "level-one matrix is not the identity at size {n}"
                    );
                }
            }
        }
        for l in 1..=3usize {
            let d = core(canonical::d_matrix(&charge_for_level(l), 1, &caps))?;
            for r in 0..d.labels().len() {
                for c in 0..d.labels().len() {
                    let expected = r == c;
                    ensure!(
                        d.entry(r, c).is_one() == expected
                            && d.entry(r, c).is_zero() != expected,
                        "size-one matrix is not the identity at level {l}"
                    );
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_10_bridge_golden_vector_and_round_trip() {
    gate(10, "tableau golden vector and round trip", || {
        let caps = Caps::default();
        let s = charge(&[7, 5, 4]);
        let shape = core(bridge::TauShape::new(&s, 6))?;
        let lambda: Multipartition = "[[1],[1,1],[]]".parse().map_err(|e| format!("{e}"))?;
        let tab = core(bridge::tableau_of(&lambda, &shape))?;
        let golden = vec![8, 7, 7, 7, 7, 7, 12, 12, 11, 11, 14, 14, 14];
        ensure!(
            tab.weight_tau() == golden,
            "golden weight vector mismatch: {:?}",
            tab.weight_tau()
        );
        for mu in core(Multipartition::enumerate(3, 3, &caps))? {
            let t = core(bridge::tableau_of(&mu, &shape))?;
            ensure!(t.is_column_strict(), "tableau of {mu} is not column strict");
            let back = core(bridge::lambda_of(&t))?;
            ensure!(back == mu, "round trip fails at {mu}");
        }
        Ok(())
    });
}

#[test]
fn criterion_11_singular_gram_nondegenerate_at_two() {
    gate(11, "singular Gram determinant nonzero at q = 2", || {
        let caps = Caps::default();
        let s = charge(&[1, 0]);
        let mut smallest = None;
        for n in 1..=6u64 {
            if core(fock::singular_space_dim(&s, n, &caps))? > 0 {
                smallest = Some(n);
                break;
            }
        }
        let n = smallest.ok_or_else(|| "no nonempty singular space found".to_string())?;
        ensure!(n == 2, "expected the first singular space at size 2, got {n}");
        let q = BigRational::from_integer(2.into());
        let det = core(fock::singular_space_dim(&s, n, &caps).and_then(|_| {
            canonical::gram_singular(&s, n, &q, &caps)
        }))?;
        ensure!(!det.is_zero(), "Gram determinant vanishes at q = 2");
        ensure!(
            det == BigRational::from_integer(21.into()),
            "Gram determinant is {det}, expected 21"
        );
        Ok(())
    });
}

#[test]
fn criterion_12_commutator_and_removal_recovery() {
    gate(12, "commutator and removal recovery", || {
        let caps = Caps::default();
        for l in 1..=3usize {
            for n in 2..=5u64 {
                let res_up = core(res_matrix(n + 1, l, &caps))?;
                let ind_here = core(ind_matrix(n, l, &caps))?;
                let up_then_down = res_up.matrix.mul(&ind_here.matrix).map_err(|e| e.to_string())?;
                let res_here = core(res_matrix(n, l, &caps))?;
                let ind_below = core(ind_matrix(n - 1, l, &caps))?;
                let down_then_up = ind_below
                    .matrix
                    .mul(&res_here.matrix)
                    .map_err(|e| e.to_string())?;
                let diff = up_then_down.sub(&down_then_up).map_err(|e| e.to_string())?;
                let scale = BigRational::from_integer((l as i64).into());
                let expected = QMatrix::identity(diff.rows()).scaled(&scale);
                ensure!(
                    diff == expected,
                    "commutator is not l times the identity at level {l}, size {n}"
                );

                let mut ambiguous = 0usize;
                for lambda in core(Multipartition::enumerate(l, n, &caps))? {
                    let removals: BTreeSet<Multipartition> = lambda
                        .removable_boxes()
                        .iter()
                        .map(|b| lambda.with_box_removed(b).expect("removable box"))
                        .collect();
                    let set: Vec<Multipartition> = removals.into_iter().collect();
                    match recover_from_removals(&set) {
                        Ok(back) => {
                            ensure!(back == lambda, "recovery returned {back} for {lambda}")
                        }
                        Err(cherednik::Error::Ambiguous(_)) if n == 2 && set.len() == 1 => {
                            // A lone rectangle of size two shares its removal
                            // set with its transpose; certified ambiguity.
                            ambiguous += 1;
                        }
                        Err(e) => return Err(format!("recovery failed at {lambda}: {e}")),
                    }
                }
                if n == 2 {
                    ensure!(
                        ambiguous == 2 * l,
                        "expected {} ambiguous size-two labels, found {ambiguous}",
                        2 * l
                    );
                } else {
                    ensure!(ambiguous == 0, "unexpected ambiguity at size {n}");
                }
            }
        }
        Ok(())
    });
}
