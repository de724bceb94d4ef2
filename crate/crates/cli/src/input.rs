//! Reading command-line vectors, cones, classes and fixture files.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use coxring::cone::Cone;
use coxring::linalg::{parse_vector_list, LatticeVector};
use coxring::pipeline::fixtures::{
    read_characters, read_ring, read_surface, CharacterDocument, RingDocument, SurfaceDocument,
};
use coxring::pipeline::{ClassTable, FixtureBundle};
use coxring::ring::{parse_polynomial, Polynomial};

use crate::args::ConeInput;

pub fn vector(s: &str) -> Result<LatticeVector> {
    s.parse::<LatticeVector>().map_err(|e| anyhow!("vector {s:?}: {e}"))
}

pub fn vector_list(s: &str) -> Result<Vec<LatticeVector>> {
    parse_vector_list(s).map_err(|e| anyhow!("vector list {s:?}: {e}"))
}

pub fn read_cone(path: &Path) -> Result<Cone> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("cannot parse cone {}", path.display()))
}

/// The rank from `--rank`, else from the first generator.
fn rank_of(rank: Option<usize>, rays: &[LatticeVector]) -> Result<usize> {
    match (rank, rays.first()) {
        (Some(r), _) => Ok(r),
        (None, Some(v)) => Ok(v.len()),
        (None, None) => bail!("--rank is required for an empty generator list"),
    }
}

pub fn cone_from_rays(rank: Option<usize>, rays: &str) -> Result<(Cone, Vec<LatticeVector>)> {
    let gens = vector_list(rays)?;
    let rank = rank_of(rank, &gens)?;
    Ok((Cone::from_rays(rank, &gens)?, gens))
}

/// The cone and the generators a certificate should refer to: the given rays, or
/// the cone's own generator list when read from a file.
pub fn cone(input: &ConeInput) -> Result<(Cone, Vec<LatticeVector>)> {
    match (&input.rays, &input.cone) {
        (Some(rays), _) => cone_from_rays(input.rank, rays),
        (None, Some(path)) => {
            let c = read_cone(path)?;
            if let Some(r) = input.rank {
                if r != c.rank() {
                    bail!("--rank {r} disagrees with the cone file's rank {}", c.rank());
                }
            }
            let gens = c.generator_list();
            Ok((c, gens))
        }
        (None, None) => bail!("give the cone with --rays or --cone"),
    }
}

/// Basis labels and named effective generators of a surface.
pub fn surface_table(doc: &SurfaceDocument) -> Result<ClassTable> {
    let mut t = ClassTable::new(doc.basis_labels.clone());
    for (name, v) in &doc.effective_generators {
        t.insert(name, v.clone()).map_err(|e| anyhow!(e))?;
    }
    Ok(t)
}

/// A class given as coordinates of the right length, or as an expression.
pub fn class(s: &str, rank: usize, table: Option<&ClassTable>) -> Result<LatticeVector> {
    if let Ok(v) = s.parse::<LatticeVector>() {
        if v.len() == rank {
            return Ok(v);
        }
    }
    match table {
        Some(t) => t.eval(s).map_err(|e| anyhow!(e)),
        None => bail!("{s:?} is not a vector of length {rank}, and the fixture has no lattice_ref for named classes"),
    }
}

/// The class table of the surface a ring or character file refers to.
pub fn referenced_table(fixture: &Path, lattice_ref: Option<&str>) -> Result<Option<ClassTable>> {
    let Some(r) = lattice_ref else { return Ok(None) };
    let path = fixture.parent().unwrap_or(Path::new(".")).join(r);
    let doc = read_surface(&path)?;
    Ok(Some(surface_table(&doc)?))
}

/// A bundle file (it has `identities`) rather than a single surface, ring or character file.
fn is_bundle(path: &Path) -> Result<bool> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let v: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("cannot parse {}", path.display()))?;
    Ok(v.get("identities").is_some())
}

fn bundle(path: &Path) -> Result<Option<(FixtureBundle, ClassTable)>> {
    if !is_bundle(path)? {
        return Ok(None);
    }
    let b = FixtureBundle::load(path)?;
    let t = ClassTable::for_bundle(&b).map_err(|e| anyhow!(e))?;
    Ok(Some((b, t)))
}

/// The surface of a surface or bundle file, with its named classes.
pub fn surface(path: &Path) -> Result<(SurfaceDocument, ClassTable)> {
    if let Some((b, t)) = bundle(path)? {
        return Ok((b.surface, t));
    }
    let doc = read_surface(path)?;
    let t = surface_table(&doc)?;
    Ok((doc, t))
}

/// The ring of a ring or bundle file, with the named classes of its grading lattice if known.
pub fn ring(path: &Path) -> Result<(RingDocument, Option<ClassTable>)> {
    if let Some((b, t)) = bundle(path)? {
        return Ok((b.ring, Some(t)));
    }
    let doc = read_ring(path)?;
    let t = referenced_table(path, doc.lattice_ref.as_deref())?;
    Ok((doc, t))
}

/// The characters of a character or bundle file, with named classes if known.
pub fn characters(path: &Path) -> Result<(CharacterDocument, Option<ClassTable>)> {
    if let Some((b, t)) = bundle(path)? {
        return Ok((b.characters, Some(t)));
    }
    let doc = read_characters(path)?;
    let t = referenced_table(path, doc.lattice_ref.as_deref())?;
    Ok((doc, t))
}

/// `name=expression`.
pub fn assignment(s: &str) -> Result<(String, Polynomial)> {
    let (name, expr) = s.split_once('=').ok_or_else(|| anyhow!("assignment {s:?} lacks `=`"))?;
    let name = name.trim();
    if name.is_empty() {
        bail!("assignment {s:?} has an empty variable name");
    }
    let p = parse_polynomial(expr).with_context(|| format!("assignment to {name}"))?;
    Ok((name.to_string(), p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classes_by_vector_or_name() {
        let t = ClassTable::new(vec!["L".into(), "E".into()]);
        assert_eq!(class("3,-1", 2, Some(&t)).unwrap(), LatticeVector::from_i64s(&[3, -1]));
        assert_eq!(class("3*L - E", 2, Some(&t)).unwrap(), LatticeVector::from_i64s(&[3, -1]));
        assert_eq!(class("0", 2, Some(&t)).unwrap(), LatticeVector::zeros(2));
        assert!(class("3", 2, None).is_err());
    }

    #[test]
    fn assignments() {
        let (n, p) = assignment("x = y^2 - z").unwrap();
        assert_eq!(n, "x");
        assert_eq!(p.len(), 2);
        assert!(assignment("x").is_err());
        assert!(assignment("=y").is_err());
    }
}
