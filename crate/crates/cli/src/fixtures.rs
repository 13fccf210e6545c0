//! Bundled algebras and maps, written out as explicit spec files.

use std::fs;
use std::path::Path;

use kacalg::analysis::{fusion_isomorphisms, lift_k_iso};
use kacalg::hopf::{function_algebra, group_algebra, kac_palyutkin, tensor_hopf, FaultTarget, FiniteGroup, HopfAlgebra};
use kacalg::io::{AlgebraSpecFile, MapSpecFile};
use kacalg::ktheory::{fusion_ring, k0_states};
use kacalg::linalg::{LinearMap, Matrix};
use kacalg::scalar::Scalar;
use kacalg::{Error, Exact, Result};

pub const ALGEBRAS: [&str; 7] = ["kp", "c_s3", "fn_s3", "fn_z2", "fn_z4", "fn_z2_sq", "fn_klein"];

/// Seed used for the Wedderburn decompositions baked into fixture files.
pub const FIXTURE_SEED: u64 = 0;

pub fn algebra(name: &str) -> Result<HopfAlgebra<Exact>> {
    let h = match name {
        "kp" => kac_palyutkin(FIXTURE_SEED)?,
        "c_s3" => group_algebra(&FiniteGroup::symmetric3(), FIXTURE_SEED)?,
        "fn_s3" => function_algebra(&FiniteGroup::symmetric3()),
        "fn_z2" => function_algebra(&FiniteGroup::cyclic(2)),
        "fn_z4" => function_algebra(&FiniteGroup::cyclic(4)),
        "fn_z2_sq" => {
            let z2 = function_algebra(&FiniteGroup::cyclic(2));
            tensor_hopf(&z2, &z2)?
        }
        "fn_klein" => function_algebra(&FiniteGroup::klein()),
        other => return Err(Error::Parse { context: "fixture".into(), message: format!("unknown fixture {other}") }),
    };
    Ok(h.with_name(name))
}

fn broken(name: &str) -> Result<HopfAlgebra<Exact>> {
    let half = Exact::from_ratio(1, 2);
    let h = match name {
        "kp_broken" => algebra("kp")?.inject_fault(FaultTarget::Coproduct, 7, 7 * 8 + 7, half)?,
        "c_s3_broken" => algebra("c_s3")?.inject_fault(FaultTarget::Counit, 1, 0, half)?,
        "fn_z4_broken" => algebra("fn_z4")?.inject_fault(FaultTarget::Antipode, 1, 1, half)?,
        other => return Err(Error::Parse { context: "fixture".into(), message: format!("unknown fixture {other}") }),
    };
    Ok(h.with_name(name))
}

fn permutation(perm: &[usize]) -> LinearMap<Exact> {
    LinearMap::new(Matrix::from_columns(perm.len(), perm.iter().map(|&p| vec![(p, Exact::from_i64(1))]).collect()))
}

fn maps() -> Result<Vec<MapSpecFile>> {
    let (a, b) = (algebra("fn_z2_sq")?, algebra("fn_klein")?);
    let isos = fusion_isomorphisms(&fusion_ring(&a)?, &k0_states(&a)?, &fusion_ring(&b)?, &k0_states(&b)?);
    let lift = lift_k_iso(&isos[0], &a, &b)?;
    let fn_s3 = algebra("fn_s3")?;
    Ok(vec![
        MapSpecFile::identity("id_kp", 8),
        MapSpecFile::from_map("lift_z2_sq_klein", &lift)?,
        MapSpecFile::from_map("kappa_fn_s3", fn_s3.antipode())?,
        MapSpecFile::from_map("inverse_fn_z4", &lift_k_iso(&[0, 3, 2, 1], &algebra("fn_z4")?, &algebra("fn_z4")?)?)?,
        MapSpecFile::from_map("counit_violating_klein", &permutation(&[1, 0, 2, 3]))?,
    ])
}

/// Resolve a fixture name or a spec-file path.
pub fn resolve(name_or_path: &str) -> Result<AlgebraSpecFile> {
    if ALGEBRAS.contains(&name_or_path) {
        return AlgebraSpecFile::from_hopf(&algebra(name_or_path)?);
    }
    AlgebraSpecFile::load(Path::new(name_or_path))
}

pub fn write_all(dir: &Path) -> Result<Vec<String>> {
    let io = |e: std::io::Error| Error::Parse { context: dir.display().to_string(), message: e.to_string() };
    fs::create_dir_all(dir).map_err(io)?;
    let mut written = Vec::new();
    let mut put = |file: String, text: String| -> Result<()> {
        fs::write(dir.join(&file), text).map_err(io)?;
        written.push(file);
        Ok(())
    };
    for name in ALGEBRAS {
        put(format!("{name}.json"), AlgebraSpecFile::from_hopf(&algebra(name)?)?.emit())?;
    }
    for name in ["kp_broken", "c_s3_broken", "fn_z4_broken"] {
        put(format!("{name}.json"), AlgebraSpecFile::from_hopf(&broken(name)?)?.emit())?;
    }
    for m in maps()? {
        put(format!("{}.json", m.name), m.emit())?;
    }
    Ok(written)
}
