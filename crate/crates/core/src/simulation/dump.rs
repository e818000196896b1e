//! Debug dump of a [`PathBundle`]: four little-endian `u64` header words
//! (K, grid length, master seed, replicate) followed by the row-major
//! `f64` values, also little-endian.

use std::io::{Read, Write};

use super::paths::PathBundle;
use super::rng::RngPolicy;
use crate::error::{Error, Result};

pub fn write_dump<W: Write>(bundle: &PathBundle, mut out: W) -> std::io::Result<()> {
    for word in [
        bundle.coefficients() as u64,
        bundle.grid_len() as u64,
        bundle.policy().master_seed,
        bundle.replicate(),
    ] {
        out.write_all(&word.to_le_bytes())?;
    }
    for v in bundle.values() {
        out.write_all(&v.to_le_bytes())?;
    }
    out.flush()
}

pub fn read_dump<R: Read>(mut input: R) -> Result<PathBundle> {
    let mut word = [0u8; 8];
    let mut header = [0u64; 4];
    for h in &mut header {
        input
            .read_exact(&mut word)
            .map_err(|e| Error::Dump(format!("truncated header: {e}")))?;
        *h = u64::from_le_bytes(word);
    }
    let [k, len, seed, replicate] = header;
    let count = k
        .checked_mul(len)
        .filter(|&c| c <= (1 << 32))
        .ok_or_else(|| Error::Dump(format!("implausible shape {k} x {len}")))?;
    let mut values = Vec::with_capacity(count as usize);
    for _ in 0..count {
        input
            .read_exact(&mut word)
            .map_err(|e| Error::Dump(format!("truncated body: {e}")))?;
        values.push(f64::from_le_bytes(word));
    }
    if input.read(&mut word).map_err(|e| Error::Dump(e.to_string()))? != 0 {
        return Err(Error::Dump("trailing bytes after body".into()));
    }
    Ok(PathBundle::from_parts(
        k as usize,
        len as usize,
        values,
        replicate,
        RngPolicy::new(seed),
    ))
}
