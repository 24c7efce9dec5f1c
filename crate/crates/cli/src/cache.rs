//! Pisot certificates cached on disk, keyed by the SHA-256 of the normalized
//! substitution text. A cache entry is re-validated before use: the
//! characteristic polynomial must match and the stored interval must isolate
//! the largest real root. Irreducibility and the conjugate count are trusted.

use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use tilegraph::exactmath::{NumberField, RatPoly, RealIsolation};
use tilegraph::substitution::{certify_pisot, PisotCertificate, Rejection, Substitution};

pub fn cache_path(dir: &Path, sigma: &Substitution) -> PathBuf {
    let digest = Sha256::digest(sigma.to_text().as_bytes());
    dir.join(format!("spectral-{}.json", hex::encode(digest)))
}

pub fn load(path: &Path, sigma: &Substitution) -> Option<PisotCertificate> {
    let value: Value = serde_json::from_str(&fs::read_to_string(path).ok()?).ok()?;
    if value["substitution"].as_str()? != sigma.to_text() {
        return None;
    }
    let stored: Vec<BigInt> =
        value["charpoly"].as_array()?.iter().map(|c| c.as_str()?.parse().ok()).collect::<Option<_>>()?;
    let charpoly = RatPoly::from_bigints(&sigma.incidence::<BigInt>().charpoly());
    if RatPoly::from_bigints(&stored) != charpoly {
        return None;
    }
    let lo = value["beta_lo"].as_str()?.parse().ok()?;
    let hi = value["beta_hi"].as_str()?.parse().ok()?;
    let isolation = RealIsolation::from_bounds(&charpoly, lo, hi)?;
    let conjugates_inside = value["conjugates_inside"].as_u64()? as usize;
    let field = NumberField::new(&charpoly, isolation);
    Some(PisotCertificate { charpoly, field, conjugates_inside })
}

pub fn store(path: &Path, sigma: &Substitution, cert: &PisotCertificate) -> std::io::Result<()> {
    let iso = cert.beta_isolation();
    let value = json!({
        "substitution": sigma.to_text(),
        "charpoly": sigma.incidence::<BigInt>().charpoly().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "beta_lo": iso.lo().to_string(),
        "beta_hi": iso.hi().to_string(),
        "beta": iso.to_f64(),
        "conjugates_inside": cert.conjugates_inside,
    });
    fs::write(path, serde_json::to_string_pretty(&value)? + "\n")
}

/// Certificate from `dir` if a valid entry exists, otherwise computed and stored.
pub fn certificate(dir: Option<&Path>, sigma: &Substitution) -> Result<(PisotCertificate, bool), Rejection> {
    let Some(dir) = dir else {
        return certify_pisot(sigma).map(|c| (c, false));
    };
    let path = cache_path(dir, sigma);
    if let Some(cert) = load(&path, sigma) {
        return Ok((cert, true));
    }
    let cert = certify_pisot(sigma)?;
    // a failed write only costs a recomputation next time
    let _ = store(&path, sigma, &cert);
    Ok((cert, false))
}
