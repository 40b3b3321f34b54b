//! Peak resident set size of the current process.

use std::fs;

/// Reads `VmHWM` from `/proc/self/status` and returns it in bytes.
/// Returns `None` on platforms without procfs or if the field is missing;
/// callers report 0 in that case.
pub fn peak_rss_bytes() -> Option<u64> {
    let status = fs::read_to_string("/proc/self/status").ok()?;
    parse_vm_hwm(&status)
}

fn parse_vm_hwm(status: &str) -> Option<u64> {
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    let kib: u64 = line.split_whitespace().nth(1)?.parse().ok()?;
    Some(kib * 1024)
}
