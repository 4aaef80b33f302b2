//! Streaming phase-condition census with resumable checkpoints.

use std::fs::{self, File, OpenOptions};
use std::io::{self, BufWriter, Write};
use std::path::Path;

use cyclosynth::ringsynth::{census_range, FactorSieve};
use num_rational::Ratio;
use serde_json::{json, Value};

use crate::{Failure, Outcome};

pub const BLOCK: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Progress {
    max: u64,
    next: u64,
    satisfied: u64,
    total: u64,
    output_bytes: u64,
}

impl Progress {
    fn to_json(self) -> Value {
        json!({
            "max": self.max,
            "next": self.next,
            "satisfied": self.satisfied,
            "total": self.total,
            "output_bytes": self.output_bytes,
        })
    }

    fn from_json(v: &Value) -> Option<Progress> {
        let field = |k: &str| v.get(k)?.as_u64();
        Some(Progress {
            max: field("max")?,
            next: field("next")?,
            satisfied: field("satisfied")?,
            total: field("total")?,
            output_bytes: field("output_bytes")?,
        })
    }
}

fn load(path: &Path, max: u64) -> Result<Option<Progress>, Failure> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let p = serde_json::from_str(&text)
        .ok()
        .as_ref()
        .and_then(Progress::from_json)
        .ok_or_else(|| Failure::Usage(format!("checkpoint {} is malformed", path.display())))?;
    if p.max != max {
        return Err(Failure::Usage(format!(
            "checkpoint {} was written for --max {}, not {max}",
            path.display(),
            p.max
        )));
    }
    Ok(Some(p))
}

fn save(path: &Path, p: Progress) -> Result<(), Failure> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, format!("{}\n", p.to_json()))?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Write `n,condition` for every even `n ≤ max`, then `max,num,den`.
pub fn run(max: u64, output: Option<&Path>, checkpoint: Option<&Path>) -> Outcome {
    if max < 2 {
        return Err(Failure::Usage("--max must be at least 2".into()));
    }
    let resume = match checkpoint {
        Some(ck) => load(ck, max)?,
        None => None,
    };
    let mut progress = resume.unwrap_or(Progress {
        max,
        next: 2,
        satisfied: 0,
        total: 0,
        output_bytes: 0,
    });
    let mut sink: Box<dyn Write> = match output {
        Some(path) => {
            let file = if resume.is_some() {
                let f = OpenOptions::new().write(true).open(path)?;
                f.set_len(progress.output_bytes)?;
                let mut f = f;
                io::Seek::seek(&mut f, io::SeekFrom::End(0))?;
                f
            } else {
                File::create(path)?
            };
            Box::new(BufWriter::new(file))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let sieve = FactorSieve::new(max);
    while progress.next <= max {
        let end = (progress.next + BLOCK - 1).min(max);
        let mut chunk = String::new();
        for (n, ok) in census_range(&sieve, progress.next, end) {
            chunk.push_str(&format!("{n},{ok}\n"));
            progress.total += 1;
            progress.satisfied += ok as u64;
        }
        sink.write_all(chunk.as_bytes())?;
        sink.flush()?;
        progress.output_bytes += chunk.len() as u64;
        progress.next = end + 1;
        if let Some(ck) = checkpoint {
            save(ck, progress)?;
        }
    }
    let f = Ratio::new(progress.satisfied, progress.total.max(1));
    sink.write_all(format!("{max},{},{}\n", f.numer(), f.denom()).as_bytes())?;
    sink.flush()?;
    Ok(true)
}
