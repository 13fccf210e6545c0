//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use kacalg::analysis::{
    biinner_check, block_rotation, classify_iso, diagonal_commutant, intertwines_antipodes, jordan_check,
    power_trace_isospectral, Verdict,
};
use kacalg::duality::{dualize, DualAlgebra};
use kacalg::hopf::{group_algebra, haar_state, haar_values, tensor_hopf, verify_hopf, FaultTarget, FiniteGroup};
use kacalg::io::{AlgebraSpecFile, MapSpecFile};
use kacalg::ktheory::{build_tower, fusion_ring, k0_states, verify_box_convolve, DEFAULT_CAP};
use kacalg::multimatrix::BlockShape;
use kacalg::scalar::Scalar;
use kacalg::{Error, Exact, ExactHopf, ExactMap, Result};

const SEED: u64 = 0;
const FIXTURE_BUDGET: Duration = Duration::from_secs(10);
const BOX_CONVOLVE_BUDGET: Duration = Duration::from_secs(60);
const TOWER_BUDGET: Duration = Duration::from_secs(300);
const BIINNER_SAMPLES: u64 = 12;
const SPECTRAL_PAIRS: usize = 50;
const DETERMINISM_THREADS: [usize; 2] = [1, 4];

fn q(n: i64, d: i64) -> Exact {
    Exact::from_ratio(n, d)
}

fn fixture_path(name: &str) -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", &format!("{name}.json")].iter().collect()
}

fn load(name: &str) -> Result<ExactHopf> {
    AlgebraSpecFile::load(&fixture_path(name))?.to_hopf(SEED)
}

fn load_map(name: &str) -> Result<ExactMap> {
    MapSpecFile::load(&fixture_path(name))?.to_map()
}

/// C[Z₂], C(Z₂), C[S₃], C(S₃), C(Z₄), KP, KP⊗KP.
fn core_fixtures() -> Result<Vec<ExactHopf>> {
    let kp = load("kp")?;
    Ok(vec![
        group_algebra(&FiniteGroup::cyclic(2), SEED)?.with_name("c_z2"),
        load("fn_z2")?,
        load("c_s3")?,
        load("fn_s3")?,
        load("fn_z4")?,
        tensor_hopf(&kp, &kp)?.with_name("kp_kp"),
        kp,
    ])
}

fn all_fixtures() -> Result<Vec<ExactHopf>> {
    let mut v = core_fixtures()?;
    v.push(load("fn_z2_sq")?);
    v.push(load("fn_klein")?);
    Ok(v)
}

struct Outcome {
    pass: bool,
    detail: String,
    report: Value,
}

fn fixture_soundness() -> Result<Outcome> {
    let fixtures = core_fixtures()?;
    let mut report = Vec::new();
    let mut clean = 0;
    for h in &fixtures {
        let r = verify_hopf(h);
        clean += usize::from(r.all_pass());
        report.push(json!({ "name": h.name(), "pass": r.all_pass(), "failures": r.failures() }));
    }
    let half = q(1, 2);
    let faults = [
        ("c_z2", FaultTarget::Coproduct, 1, 0),
        ("fn_z2", FaultTarget::Counit, 0, 0),
        ("c_s3", FaultTarget::Antipode, 5, 5),
        ("fn_s3", FaultTarget::Coproduct, 3, 3 * 6 + 3),
        ("fn_z4", FaultTarget::Counit, 2, 0),
        ("kp", FaultTarget::Antipode, 7, 6),
        ("kp_kp", FaultTarget::Coproduct, 63, 0),
    ];
    let mut detected = 0;
    for (name, target, col, row) in faults {
        let h = fixtures.iter().find(|h| h.name() == name).expect("fixture");
        let r = verify_hopf(&h.inject_fault(target, col, row, half.clone())?);
        let failed: Vec<Value> = r
            .axioms
            .iter()
            .filter(|a| !a.pass)
            .map(|a| json!({ "axiom": a.axiom, "witness": a.witness }))
            .collect();
        let witnessed = !failed.is_empty() && r.axioms.iter().filter(|a| !a.pass).all(|a| a.witness.is_some());
        detected += usize::from(witnessed);
        report.push(json!({ "fault": [name, format!("{target:?}"), col, row], "failed": failed }));
    }
    Ok(Outcome {
        pass: clean == fixtures.len() && detected == faults.len(),
        detail: format!("{clean}/{} fixtures verify, {detected}/{} faults witnessed", fixtures.len(), faults.len()),
        report: json!(report),
    })
}

fn haar_is_canonical_trace() -> Result<Outcome> {
    let mut matches = 0;
    let fixtures = all_fixtures()?;
    for h in &fixtures {
        matches += usize::from(haar_state(h)? == h.shape().canonical_trace::<Exact>());
    }
    let kp = load("kp")?;
    let values = haar_values(&kp, &haar_state(&kp)?);
    let expected = vec![q(1, 8), q(1, 8), q(1, 8), q(1, 8), q(1, 4)];
    let kp_ok = values == expected;
    Ok(Outcome {
        pass: matches == fixtures.len() && kp_ok,
        detail: format!("{matches}/{} Haar states equal the canonical trace, KP projections {}", fixtures.len(), kp_ok),
        report: json!({ "matches": matches, "kp_projection_values": values.iter().map(Scalar::to_json).collect::<Vec<_>>() }),
    })
}

fn box_convolve() -> Result<Outcome> {
    let mut report = Vec::new();
    let mut pass = true;
    let mut kp_entries = 0;
    for h in all_fixtures()? {
        let r = verify_box_convolve(&dualize(&h, SEED)?, &fusion_ring(&h)?);
        pass &= r.all_pass();
        if h.name() == "kp" {
            kp_entries = r.entries.len();
        }
        report.push(json!({ "name": h.name(), "checked": r.entries.len(), "failures": r.failures() }));
    }
    pass &= kp_entries == 125;
    Ok(Outcome { pass, detail: format!("all fixtures exact, KP {kp_entries} comparisons"), report: json!(report) })
}

/// Multiplication tables of the groups, written out independently.
fn z_n(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
}

fn s3_elements() -> Vec<[usize; 3]> {
    vec![[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]]
}

fn s3_table() -> Vec<Vec<usize>> {
    let el = s3_elements();
    let compose = |p: &[usize; 3], r: &[usize; 3]| [p[r[0]], p[r[1]], p[r[2]]];
    el.iter().map(|p| el.iter().map(|r| el.iter().position(|s| *s == compose(p, r)).unwrap()).collect()).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut v = p.clone();
            v.insert(pos, n - 1);
            out.push(v);
        }
    }
    out
}

/// A bijection blocks → group under which `N_ij^k = [g_i g_j = g_k]`.
fn group_ring_match(h: &ExactHopf, table: &[Vec<usize>]) -> Result<Option<Vec<usize>>> {
    let ring = fusion_ring(h)?;
    let n = table.len();
    if ring.rank() != n {
        return Ok(None);
    }
    Ok(permutations(n).into_iter().find(|g| {
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| ring.get(i, j, k) == u64::from(table[g[i]][g[j]] == g[k]))))
    }))
}

/// `N_ij^k` of Rep(S₃) from its character table.
fn s3_character_fusion() -> Vec<Vec<Vec<i64>>> {
    let parity = |p: &[usize; 3]| -> i64 {
        let inversions = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    };
    let fixed = |p: &[usize; 3]| (0..3).filter(|&i| p[i] == i).count() as i64;
    let chars: Vec<Vec<i64>> = vec![
        s3_elements().iter().map(|_| 1).collect(),
        s3_elements().iter().map(parity).collect(),
        s3_elements().iter().map(|p| fixed(p) - 1).collect(),
    ];
    (0..3)
        .map(|i| {
            (0..3)
                .map(|j| (0..3).map(|k| (0..6).map(|g| chars[i][g] * chars[j][g] * chars[k][g]).sum::<i64>() / 6).collect())
                .collect()
        })
        .collect()
}

fn fusion_oracles() -> Result<Outcome> {
    let mut report = serde_json::Map::new();
    let mut pass = true;
    for (name, table) in [
        ("fn_z2", z_n(2)),
        ("fn_z4", z_n(4)),
        ("fn_z2_sq", (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect()),
        ("fn_klein", (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect()),
        ("fn_s3", s3_table()),
    ] {
        let m = group_ring_match(&load(name)?, &table)?;
        pass &= m.is_some();
        report.insert(name.into(), json!(m));
    }

    let c_s3 = load("c_s3")?;
    let ring = fusion_ring(&c_s3)?;
    let dims = c_s3.shape().dims().to_vec();
    let a = c_s3.shape();
    let trivial = (0..dims.len()).find(|&b| dims[b] == 1 && !c_s3.counit()[a.index(b, 0, 0)].is_negligible());
    let sign = (0..dims.len()).find(|&b| dims[b] == 1 && Some(b) != trivial);
    let standard = (0..dims.len()).find(|&b| dims[b] == 2);
    let characters = match (trivial, sign, standard) {
        (Some(t), Some(s), Some(d)) if dims.len() == 3 => {
            let irrep = [t, s, d];
            let n = s3_character_fusion();
            (0..3).all(|i| (0..3).all(|j| (0..3).all(|k| ring.get(irrep[i], irrep[j], irrep[k]) as i64 == n[i][j][k])))
        }
        _ => false,
    };
    pass &= characters;
    report.insert("c_s3_characters".into(), json!(characters));

    let mut counted = 0;
    let fixtures = all_fixtures()?;
    for h in &fixtures {
        let ring = fusion_ring(h)?;
        let n = h.shape().dims();
        let ok = (0..n.len()).all(|i| {
            (0..n.len()).all(|j| (0..n.len()).map(|k| ring.get(i, j, k) as usize * n[k]).sum::<usize>() == n[i] * n[j])
        });
        counted += usize::from(ok);
    }
    pass &= counted == fixtures.len();
    report.insert("dimension_count".into(), json!(counted));
    Ok(Outcome {
        pass,
        detail: format!("group rings, S3 characters {characters}, dimension count {counted}/{}", fixtures.len()),
        report: Value::Object(report),
    })
}

/// `(map, domain, codomain)` for every bundled map file.
const BUNDLED_MAPS: [(&str, &str, &str); 5] = [
    ("id_kp", "kp", "kp"),
    ("lift_z2_sq_klein", "fn_z2_sq", "fn_klein"),
    ("kappa_fn_s3", "fn_s3", "fn_s3"),
    ("inverse_fn_z4", "fn_z4", "fn_z4"),
    ("counit_violating_klein", "fn_klein", "fn_klein"),
];

fn antipode_witness() -> Result<Outcome> {
    let mut report = Vec::new();
    let (mut applicable, mut ok) = (0, 0);
    for (m, a, b) in BUNDLED_MAPS {
        let (ha, hb, f) = (load(a)?, load(b)?, load_map(m)?);
        let (da, db) = (dualize(&ha, SEED)?, dualize(&hb, SEED)?);
        let fd = DualAlgebra::dual_map(&f, &da, &db)?;
        let dual_jordan = jordan_check(&fd, db.dual_hopf.shape(), da.dual_hopf.shape()).is_none();
        if !dual_jordan {
            report.push(json!({ "map": m, "dual_jordan": false }));
            continue;
        }
        applicable += 1;
        let r = intertwines_antipodes(&f, &ha, &hb)?;
        ok += usize::from(r.intertwines && r.left_product_is_unit && r.right_product_is_unit);
        report.push(json!({ "map": m, "dual_jordan": true, "antipode": r }));
    }
    Ok(Outcome {
        pass: applicable > 0 && ok == applicable,
        detail: format!("{ok}/{applicable} maps with Jordan duals satisfy both convolution identities"),
        report: json!(report),
    })
}

fn pipeline() -> Result<Outcome> {
    let mut report = Vec::new();
    let (mut hopf_isos, mut rechecked, mut verdicts) = (0, 0, 0);
    let mut lift_ok = false;
    let mut refused = false;
    for (m, a, b) in BUNDLED_MAPS {
        match classify_iso(&load_map(m)?, &load(a)?, &load(b)?, SEED) {
            Ok(r) => {
                verdicts += 1;
                rechecked += usize::from(r.evidence_recheck);
                if r.verdict == Verdict::HopfIso {
                    hopf_isos += 1;
                    lift_ok |= m == "lift_z2_sq_klein";
                }
                report.push(json!({ "map": m, "verdict": r.verdict, "evidence_recheck": r.evidence_recheck }));
            }
            Err(Error::Precondition { name, .. }) => {
                refused |= m == "counit_violating_klein";
                report.push(json!({ "map": m, "refused": name }));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(Outcome {
        pass: hopf_isos >= 3 && lift_ok && rechecked == verdicts && refused,
        detail: format!("{hopf_isos} hopf_iso verdicts, {rechecked}/{verdicts} evidence rechecks hold"),
        report: json!(report),
    })
}

fn biinner() -> Result<Outcome> {
    let kp = load("kp")?;
    let shape = kp.shape();
    let family = diagonal_commutant(&kp)?;
    let last = shape.num_blocks() - 1;
    let mut samples = Vec::new();
    let (mut commuting, mut hopf, mut explained) = (0, 0, 0);
    for seed in 0..BIINNER_SAMPLES {
        let u: Vec<Exact> = family.sample(shape, seed);
        let r = biinner_check(&u, &kp, SEED)?;
        commuting += usize::from(r.commutes_with_cocentre);
        hopf += usize::from(r.hopf_automorphism);
        // Ad(u) only sees the phase ratio inside the 2-block
        let ratio = u[shape.index(last, 0, 0)].clone() / &u[shape.index(last, 1, 1)];
        let sign = (ratio.clone() * ratio).approx_eq(&q(1, 1));
        explained += usize::from(sign == r.hopf_automorphism);
        samples.push(json!({
            "seed": seed,
            "ratio": sign,
            "commutes": r.commutes_with_cocentre,
            "hopf_automorphism": r.hopf_automorphism,
            "kappa_symmetric": r.kappa_symmetric,
            "verdict": r.classification.as_ref().map(|c| c.verdict),
            "dichotomy": r.classification.as_ref().map(|c| c.dichotomy),
            "evidence_recheck": r.classification.as_ref().map(|c| c.evidence_recheck),
        }));
    }
    // κ-symmetric member of the family
    let mut flip = shape.unit::<Exact>();
    flip[shape.index(last, 1, 1)] = q(-1, 1);
    let flip_report = biinner_check(&flip, &kp, SEED)?;

    let outsider = family.violating_sample::<Exact>(shape, SEED).or_else(|| block_rotation(shape, SEED));
    let outsider_fails = match &outsider {
        Some(u) => !biinner_check(u, &kp, SEED)?.commutes_with_cocentre,
        None => false,
    };
    let n = BIINNER_SAMPLES as usize;
    Ok(Outcome {
        pass: commuting == n && hopf == n && outsider_fails,
        detail: format!(
            "{hopf}/{n} sampled commutant members are Hopf automorphisms, {explained}/{n} match \"2-block phase ratio is ±1\", sign flip {}, outsider rejected {outsider_fails}",
            flip_report.pass()
        ),
        report: json!({
            "classes": family.classes,
            "samples": samples,
            "sign_flip": flip_report.pass(),
            "outsider_rejected": outsider_fails,
        }),
    })
}

fn tower() -> Result<Outcome> {
    let kp = load("kp")?;
    let t = build_tower(&kp, 3, DEFAULT_CAP, false)?;
    let level2 = t.levels[1].hopf.as_ref().map(|h| verify_hopf(h).all_pass()) == Some(true);
    let level3 = t.levels[2].hopf.is_none() && t.levels[2].shape.dims().iter().map(|n| n * n).sum::<usize>() == 512;

    let base = kp.shape().dims();
    let bratteli = t.dims_consistent()
        && t.connecting.iter().enumerate().all(|(m, mat)| {
            let (lo, hi) = (t.levels[m].shape.dims(), t.levels[m + 1].shape.dims());
            let shaped = (0..lo.len()).all(|i| {
                (0..hi.len()).all(|c| {
                    let expected = if c / base.len() == i { base[c % base.len()] as u64 } else { 0 };
                    mat[i][c] == expected
                })
            });
            shaped && (0..hi.len()).all(|c| (0..lo.len()).map(|i| mat[i][c] as usize * lo[i]).sum::<usize>() == hi[c])
        });

    let v = k0_states(&kp)?.haar;
    let power = |m: usize| -> Vec<Exact> {
        (0..v.len().pow(m as u32))
            .map(|mut idx| {
                let mut p = q(1, 1);
                for _ in 0..m {
                    p = v[idx % v.len()].clone() * p;
                    idx /= v.len();
                }
                p
            })
            .collect()
    };
    let k0_powers = t.levels.iter().enumerate().all(|(m, l)| l.k0.haar == power(m + 1));
    let level2_haar = match &t.levels[1].hopf {
        Some(h) => k0_states(h)?.haar == power(2),
        None => false,
    };
    let rings = t.ring_consistent.iter().all(|c| *c != Some(false));
    Ok(Outcome {
        pass: level2 && level3 && bratteli && k0_powers && level2_haar && rings,
        detail: format!(
            "level 2 verifies {level2}, level 3 dim 512 {level3}, Bratteli {bratteli}, K0 tensor powers {}",
            k0_powers && level2_haar
        ),
        report: t.to_json(),
    })
}

type Blocks = Vec<Vec<Vec<Exact>>>;

fn gauss(rng: &mut ChaCha8Rng) -> Exact {
    q(rng.gen_range(-2..=2), 1) + Exact::i() * q(rng.gen_range(-2..=2), 1)
}

fn to_blocks(a: &BlockShape, x: &[Exact]) -> Blocks {
    (0..a.num_blocks()).map(|b| a.block_matrix(x, b)).collect()
}

fn from_blocks(a: &BlockShape, blocks: &Blocks) -> Vec<Exact> {
    let mut x = a.zero::<Exact>();
    for (b, m) in blocks.iter().enumerate() {
        for (r, row) in m.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                x[a.index(b, r, c)] = v.clone();
            }
        }
    }
    x
}

fn matmul(x: &[Vec<Exact>], y: &[Vec<Exact>]) -> Vec<Vec<Exact>> {
    let n = x.len();
    (0..n)
        .map(|r| (0..n).map(|c| (0..n).fold(q(0, 1), |acc, k| acc + x[r][k].clone() * &y[k][c])).collect())
        .collect()
}

fn adjoint(x: &[Vec<Exact>]) -> Vec<Vec<Exact>> {
    let n = x.len();
    (0..n).map(|r| (0..n).map(|c| x[c][r].conj()).collect()).collect()
}

/// Unitary: a Pythagorean phase on each row, then a rotation of the first two rows.
fn random_unitary(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Exact>> {
    let mut pyth = || {
        let (a, b): (i64, i64) = (rng.gen_range(1..=9), rng.gen_range(1..=9));
        let s = a * a + b * b;
        (q(a * a - b * b, s), q(2 * a * b, s))
    };
    let mut u: Vec<Vec<Exact>> =
        (0..n).map(|r| (0..n).map(|c| if r == c { q(1, 1) } else { q(0, 1) }).collect()).collect();
    for (r, row) in u.iter_mut().enumerate() {
        let (c, s) = pyth();
        row[r] = c + Exact::i() * s;
    }
    if n >= 2 {
        let (c, s) = pyth();
        let mut rot = u.clone();
        for row in rot.iter_mut() {
            row.iter_mut().for_each(|v| *v = q(0, 1));
        }
        for (r, row) in rot.iter_mut().enumerate().skip(2) {
            row[r] = q(1, 1);
        }
        rot[0][0] = c.clone();
        rot[1][1] = c;
        rot[0][1] = -s.clone();
        rot[1][0] = s;
        u = matmul(&rot, &u);
    }
    u
}

/// Characteristic polynomial by Faddeev–LeVerrier, lowest degree first.
fn faddeev_leverrier(a: &[Vec<Exact>]) -> Vec<Exact> {
    let n = a.len();
    let mut coeffs = vec![q(0, 1); n + 1];
    coeffs[n] = q(1, 1);
    let mut m: Vec<Vec<Exact>> = vec![vec![q(0, 1); n]; n];
    for k in 1..=n {
        for (r, row) in m.iter_mut().enumerate() {
            row[r] = row[r].clone() + &coeffs[n - k + 1];
        }
        m = matmul(a, &m);
        let tr = (0..n).fold(q(0, 1), |acc, r| acc + &m[r][r]);
        coeffs[n - k] = -(tr / q(k as i64, 1));
    }
    coeffs
}

fn poly_mul(x: &[Exact], y: &[Exact]) -> Vec<Exact> {
    let mut out = vec![q(0, 1); x.len() + y.len() - 1];
    for (i, a) in x.iter().enumerate() {
        for (j, b) in y.iter().enumerate() {
            out[i + j] = out[i + j].clone() + a.clone() * b;
        }
    }
    out
}

/// Characteristic polynomial of the regular representation: `Π_i χ_{X_i}^{n_i}`.
fn regular_char_poly(a: &BlockShape, x: &[Exact]) -> Vec<Exact> {
    let mut p = vec![q(1, 1)];
    for (b, m) in to_blocks(a, x).iter().enumerate() {
        let c = faddeev_leverrier(m);
        for _ in 0..a.dims()[b] {
            p = poly_mul(&p, &c);
        }
    }
    p
}

fn newton_girard() -> Result<Outcome> {
    let shapes: [&[usize]; 9] = [&[1, 1], &[2], &[1, 1, 1], &[2, 1], &[1, 2], &[1, 1, 1, 1, 1], &[2, 1, 1], &[1, 2, 1], &[1; 6]];
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut agree, mut positives, mut negatives) = (0, 0, 0);
    let mut mismatches = Vec::new();
    for case in 0..2 * SPECTRAL_PAIRS {
        let dims = shapes[rng.gen_range(0..shapes.len())].to_vec();
        let a = BlockShape::new(dims.clone());
        let blocks: Blocks = dims
            .iter()
            .map(|&n| {
                let g: Vec<Vec<Exact>> = (0..n).map(|_| (0..n).map(|_| gauss(&mut rng)).collect()).collect();
                let ga = adjoint(&g);
                (0..n).map(|r| (0..n).map(|c| g[r][c].clone() + &ga[r][c]).collect()).collect()
            })
            .collect();
        let x = from_blocks(&a, &blocks);
        let positive = case < SPECTRAL_PAIRS;
        let (b, y) = if positive {
            // conjugate every block, then reverse the block order
            let conj: Blocks = blocks
                .iter()
                .map(|m| {
                    let u = random_unitary(m.len(), &mut rng);
                    matmul(&matmul(&u, m), &adjoint(&u))
                })
                .rev()
                .collect();
            let b = BlockShape::new(dims.iter().rev().copied().collect());
            let y = from_blocks(&b, &conj);
            (b, y)
        } else {
            let mut y = x.clone();
            let blk = rng.gen_range(0..dims.len());
            let k = a.index(blk, 0, 0);
            y[k] = y[k].clone() + q(rng.gen_range(1..=3), 1);
            (a.clone(), y)
        };
        let oracle = regular_char_poly(&a, &x) == regular_char_poly(&b, &y);
        let r = power_trace_isospectral(&x, &a, &y, &b)?;
        if r.isospectral == oracle && oracle == positive {
            agree += 1;
        } else {
            mismatches.push(case);
        }
        positives += usize::from(positive && r.isospectral);
        negatives += usize::from(!positive && !r.isospectral);
    }
    Ok(Outcome {
        pass: agree == 2 * SPECTRAL_PAIRS,
        detail: format!("{agree}/{} pairs agree ({positives} isospectral, {negatives} separated)", 2 * SPECTRAL_PAIRS),
        report: json!({ "agree": agree, "mismatches": mismatches }),
    })
}

struct Criterion {
    id: usize,
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Result<Outcome>,
}

const CRITERIA: [Criterion; 9] = [
    Criterion { id: 1, name: "fixture soundness", budget: Some(FIXTURE_BUDGET), run: fixture_soundness },
    Criterion { id: 2, name: "Haar state is the canonical trace", budget: None, run: haar_is_canonical_trace },
    Criterion { id: 3, name: "box product matches convolution", budget: Some(BOX_CONVOLVE_BUDGET), run: box_convolve },
    Criterion { id: 4, name: "fusion ring oracles", budget: None, run: fusion_oracles },
    Criterion { id: 5, name: "antipode intertwining of Jordan duals", budget: None, run: antipode_witness },
    Criterion { id: 6, name: "classification pipeline", budget: None, run: pipeline },
    Criterion { id: 7, name: "bi-inner automorphisms of KP", budget: None, run: biinner },
    Criterion { id: 8, name: "Kac-Palyutkin tower", budget: Some(TOWER_BUDGET), run: tower },
    Criterion { id: 9, name: "power traces against characteristic polynomials", budget: None, run: newton_girard },
];

struct Ran {
    pass: bool,
    detail: String,
    report: String,
    elapsed: Duration,
}

fn run_criterion(c: &Criterion) -> Ran {
    let start = Instant::now();
    let outcome = (c.run)();
    let elapsed = start.elapsed();
    match outcome {
        Ok(o) => {
            let in_budget = c.budget.is_none_or(|b| elapsed <= b);
            let mut detail = o.detail;
            if !in_budget {
                detail.push_str(&format!("; over the {:?} budget", c.budget.unwrap()));
            }
            Ran { pass: o.pass && in_budget, detail, report: o.report.to_string(), elapsed }
        }
        Err(e) => Ran { pass: false, detail: format!("error: {e}"), report: format!("error: {e}"), elapsed },
    }
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool").install(f)
}

fn cli_output(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_kacalg")).args(args).output().expect("run kacalg");
    out.stdout
}

fn determinism(first: &[Ran]) -> Outcome {
    let [a, b] = DETERMINISM_THREADS;
    let again: Vec<String> = in_pool(a, || CRITERIA.iter().map(|c| run_criterion(c).report).collect());
    let library = first.iter().zip(&again).filter(|(x, y)| x.report == *y.as_str()).count();

    let kp = fixture_path("kp");
    let kp = kp.to_str().expect("utf-8 path");
    let commands: [Vec<&str>; 3] = [
        vec!["verify", kp],
        vec!["fusion", "--check-box-convolve", kp],
        vec!["tower", "--base", "kp", "--levels", "3"],
    ];
    let mut cli = 0;
    for args in &commands {
        let runs: Vec<Vec<u8>> = [a, b, b]
            .iter()
            .map(|t| {
                let threads = t.to_string();
                let mut full = vec!["--threads", threads.as_str()];
                full.extend(args.iter().copied());
                cli_output(&full)
            })
            .collect();
        cli += usize::from(!runs[0].is_empty() && runs.iter().all(|r| *r == runs[0]));
    }
    Outcome {
        pass: library == CRITERIA.len() && cli == commands.len(),
        detail: format!(
            "{library}/{} criterion reports identical with {b} and {a} threads, {cli}/{} CLI reports byte-identical",
            CRITERIA.len(),
            commands.len()
        ),
        report: Value::Null,
    }
}

fn main() -> ExitCode {
    let mut all_pass = true;
    let mut ran = Vec::new();
    for c in &CRITERIA {
        let r = in_pool(DETERMINISM_THREADS[1], || run_criterion(c));
        all_pass &= r.pass;
        println!(
            "criterion {:>2} {:<48} {} ({:.1?}) {}",
            c.id,
            c.name,
            if r.pass { "PASS" } else { "FAIL" },
            r.elapsed,
            r.detail
        );
        ran.push(r);
    }
    let start = Instant::now();
    let d = determinism(&ran);
    all_pass &= d.pass;
    println!(
        "criterion 10 {:<48} {} ({:.1?}) {}",
        "determinism",
        if d.pass { "PASS" } else { "FAIL" },
        start.elapsed(),
        d.detail
    );
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
