//! Binary table cache: `"DIVTBL01"`, version `u32`, `N` as `u64`, then
//! `N` little-endian `u32` counts. Prefix sums are rebuilt on load.

use std::io::{Read, Write};

use super::{alloc_zeroed, DivisorTable, MAX_TABLE_LIMIT};
use crate::error::{Error, Result};

pub const DIVISOR_CACHE_MAGIC: &[u8; 8] = b"DIVTBL01";
pub const DIVISOR_CACHE_VERSION: u32 = 1;

pub fn write_divisor_table<W: Write>(table: &DivisorTable, mut w: W) -> Result<()> {
    w.write_all(DIVISOR_CACHE_MAGIC)?;
    w.write_all(&DIVISOR_CACHE_VERSION.to_le_bytes())?;
    w.write_all(&table.limit().to_le_bytes())?;
    let mut buf = Vec::with_capacity(4 * 8192);
    for chunk in table.counts().chunks(8192) {
        buf.clear();
        for c in chunk {
            buf.extend_from_slice(&c.to_le_bytes());
        }
        w.write_all(&buf)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_divisor_table<R: Read>(mut r: R) -> Result<DivisorTable> {
    let mut magic = [0u8; 8];
    read_header(&mut r, &mut magic)?;
    if &magic != DIVISOR_CACHE_MAGIC {
        return Err(Error::Cache(format!("bad magic {:?}, expected DIVTBL01", String::from_utf8_lossy(&magic))));
    }
    let mut v = [0u8; 4];
    read_header(&mut r, &mut v)?;
    let version = u32::from_le_bytes(v);
    if version != DIVISOR_CACHE_VERSION {
        return Err(Error::Cache(format!("unsupported divisor cache version {version}")));
    }
    let mut n = [0u8; 8];
    read_header(&mut r, &mut n)?;
    let limit = u64::from_le_bytes(n);
    if limit == 0 || limit > MAX_TABLE_LIMIT {
        return Err(Error::Cache(format!("implausible table limit {limit}")));
    }
    let mut counts = alloc_zeroed::<u32>(limit as usize + 1)?;
    let mut buf = vec![0u8; 4 * 8192];
    let mut filled = 1usize;
    while filled < counts.len() {
        let take = (counts.len() - filled).min(8192);
        r.read_exact(&mut buf[..4 * take])
            .map_err(|e| Error::Cache(format!("truncated divisor cache: {e}")))?;
        for (slot, bytes) in counts[filled..filled + take].iter_mut().zip(buf.chunks_exact(4)) {
            *slot = u32::from_le_bytes(bytes.try_into().unwrap());
        }
        filled += take;
    }
    let mut extra = [0u8; 1];
    if r.read(&mut extra)? != 0 {
        return Err(Error::Cache("trailing bytes after divisor counts".into()));
    }
    DivisorTable::from_counts(counts)
}

fn read_header<R: Read>(r: &mut R, buf: &mut [u8]) -> Result<()> {
    r.read_exact(buf).map_err(|e| Error::Cache(format!("truncated divisor cache header: {e}")))
}
