//! Trajectory output: CSV of reduced observables and the PLAB snapshot dump.

use std::io::{Read, Write};

use num_complex::Complex64;

use super::evolve::Trajectory;
use super::grid::{GridState, Space};
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"PLAB";
pub const VERSION: u32 = 1;

pub const CSV_HEADER: &str = "time,norm,norm_c0,norm_c1,x1,x2,x3,p1,p2,p3,overlap_re,overlap_im";

fn num(x: f64) -> String {
    format!("{:.15e}", x)
}

/// One line per record, fixed `{:.15e}` formatting. `norm_c1` is empty for
/// one-component theories.
pub fn write_csv<W: Write>(traj: &Trajectory, mut out: W) -> Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in &traj.records {
        let c1 = r.component_norms.get(1).map(|x| num(*x)).unwrap_or_default();
        let mut fields = vec![num(r.time), num(r.norm), num(r.component_norms[0]), c1];
        fields.extend(r.mean_x.iter().map(|x| num(*x)));
        fields.extend(r.mean_p.iter().map(|x| num(*x)));
        fields.push(num(r.overlap[0]));
        fields.push(num(r.overlap[1]));
        writeln!(out, "{}", fields.join(","))?;
    }
    Ok(())
}

/// Header `PLAB`, `u32` version, then `u64` n, components, space tag and snapshot
/// count, then each snapshot as little-endian `f64` (re, im) pairs, component-major.
pub fn write_binary<W: Write>(snapshots: &[GridState], mut out: W) -> Result<()> {
    let Some(first) = snapshots.first() else {
        return Err(Error::InsufficientSnapshots { need: 1, have: 0 });
    };
    if snapshots.iter().any(|s| !s.same_shape(first) || s.space != first.space) {
        return Err(Error::Grid("snapshots differ in shape".into()));
    }
    out.write_all(MAGIC)?;
    out.write_all(&VERSION.to_le_bytes())?;
    for v in [first.n as u64, first.components as u64, first.space.tag(), snapshots.len() as u64] {
        out.write_all(&v.to_le_bytes())?;
    }
    for s in snapshots {
        for z in &s.data {
            out.write_all(&z.re.to_le_bytes())?;
            out.write_all(&z.im.to_le_bytes())?;
        }
    }
    Ok(())
}

/// Raw contents of a PLAB dump. The axis count is implied by the payload size.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryDump {
    pub n: u64,
    pub components: u64,
    pub space: Space,
    pub dims: usize,
    pub snapshots: Vec<Vec<Complex64>>,
}

fn u64_at(b: &[u8], at: usize) -> u64 {
    u64::from_le_bytes(b[at..at + 8].try_into().expect("eight bytes"))
}

pub fn read_binary<R: Read>(mut input: R) -> Result<BinaryDump> {
    let mut b = Vec::new();
    input.read_to_end(&mut b)?;
    if b.len() < 40 || &b[..4] != MAGIC {
        return Err(Error::Io("not a PLAB dump".into()));
    }
    let version = u32::from_le_bytes(b[4..8].try_into().expect("four bytes"));
    if version != VERSION {
        return Err(Error::Io(format!("unsupported PLAB version {version}")));
    }
    let (n, components, tag, count) = (u64_at(&b, 8), u64_at(&b, 16), u64_at(&b, 24), u64_at(&b, 32));
    let space = match tag {
        0 => Space::Position,
        1 => Space::Momentum,
        t => return Err(Error::Io(format!("unknown space tag {t}"))),
    };
    let payload = &b[40..];
    let per_snapshot = if count == 0 { 0 } else { payload.len() as u64 / count };
    let dims = (1..=3u32)
        .find(|&d| n.pow(d) * components * 16 == per_snapshot && per_snapshot * count == payload.len() as u64)
        .ok_or_else(|| Error::Io("payload size does not match header".into()))? as usize;
    let snapshots = payload
        .chunks(per_snapshot as usize)
        .map(|chunk| {
            chunk
                .chunks(16)
                .map(|c| {
                    let re = f64::from_le_bytes(c[..8].try_into().expect("eight bytes"));
                    let im = f64::from_le_bytes(c[8..].try_into().expect("eight bytes"));
                    Complex64::new(re, im)
                })
                .collect()
        })
        .collect();
    Ok(BinaryDump { n, components, space, dims, snapshots })
}
