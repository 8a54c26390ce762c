//! `--config <path>` support. The file holds `key = value` lines named after the long
//! flags. Its entries are spliced in right after the subcommand, ahead of the user's own
//! flags, so with `args_override_self` anything on the command line wins.

use std::ffi::OsString;
use std::path::Path;

use anyhow::{bail, Context};
use clap::Command;

pub fn parse_file(text: &str) -> anyhow::Result<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("config line {}: expected key = value", i + 1);
        };
        let key = key.trim().trim_start_matches("--");
        if key.is_empty() {
            bail!("config line {}: empty key", i + 1);
        }
        pairs.push((key.to_string(), value.trim().to_string()));
    }
    Ok(pairs)
}

fn take_config_path(args: &mut Vec<OsString>) -> anyhow::Result<Option<OsString>> {
    let mut i = 1;
    while i < args.len() {
        let arg = args[i].to_string_lossy().into_owned();
        if arg == "--" {
            break;
        }
        if arg == "--config" {
            if i + 1 >= args.len() {
                bail!("--config needs a path");
            }
            let path = args.remove(i + 1);
            args.remove(i);
            return Ok(Some(path));
        }
        if let Some(path) = arg.strip_prefix("--config=") {
            let path = OsString::from(path);
            args.remove(i);
            return Ok(Some(path));
        }
        i += 1;
    }
    Ok(None)
}

fn longs(cmd: &Command) -> Vec<String> {
    cmd.get_arguments()
        .filter_map(|a| a.get_long().map(str::to_string))
        .collect()
}

/// Expand `--config` in `args` into ordinary flags for the chosen subcommand.
pub fn expand(cmd: &Command, mut args: Vec<OsString>) -> anyhow::Result<Vec<OsString>> {
    let Some(path) = take_config_path(&mut args)? else {
        return Ok(args);
    };
    let path = Path::new(&path);
    let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    let pairs = parse_file(&text)?;

    let Some((at, sub)) = args
        .iter()
        .enumerate()
        .skip(1)
        .find_map(|(i, a)| cmd.find_subcommand(a.to_str()?).map(|s| (i, s)))
    else {
        return Ok(args);
    };
    let accepted = longs(sub);
    let known: Vec<String> = cmd.get_subcommands().flat_map(longs).collect();
    let given: Vec<String> = args[at + 1..]
        .iter()
        .filter_map(|a| a.to_str()?.strip_prefix("--").map(|s| s.split('=').next().unwrap().to_string()))
        .collect();

    let mut injected = Vec::new();
    for (key, value) in pairs {
        if !known.contains(&key) {
            bail!("config {}: unknown key '{key}'", path.display());
        }
        if !accepted.contains(&key) {
            continue;
        }
        let clashes = match key.as_str() {
            "T" => given.iter().any(|g| g == "beta"),
            "beta" => given.iter().any(|g| g == "T"),
            _ => false,
        };
        if !clashes {
            injected.push(OsString::from(format!("--{key}")));
            injected.push(OsString::from(value));
        }
    }
    args.splice(at + 1..at + 1, injected);
    Ok(args)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pairs_and_comments() {
        let pairs = parse_file("# scan\nJ = 1\n\n--B=0:2:3  # inline\n").unwrap();
        assert_eq!(
            pairs,
            vec![("J".into(), "1".into()), ("B".into(), "0:2:3".into())]
        );
        assert!(parse_file("J 1").is_err());
        assert!(parse_file("= 1").is_err());
    }
}
