//! The scenario description language: one directive per line, order
//! significant, unknown directives rejected.
//!
//! ```text
//! # the adjustment race against the baseline token
//! strategy standard-erc20
//! owner alice balance 1000 policy direct
//! spender bob frontrunner boost 10
//! allow bob 100
//! allow bob 50
//! ```

use std::fmt::Write as _;

use allowance_lab::scenario::{
    AdversaryPolicy, Intent, InterleaveSpec, LoweringMode, OwnerPolicy, Scenario, SpenderSpec,
};
use allowance_lab::strategy::StrategyName;
use allowance_lab::{Address, Amount};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("scenario is missing a `{0}` directive")]
    MissingDirective(&'static str),
    #[error("{0}")]
    Invalid(String),
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Line {
        line,
        message: message.into(),
    }
}

struct Builder {
    strategy: Option<StrategyName>,
    owner: Option<(Address, Amount, OwnerPolicy)>,
    spenders: Vec<SpenderSpec>,
    extras: Vec<(Address, Amount)>,
    trusted: bool,
    lowering: LoweringMode,
    intents: Vec<Intent>,
    declared_bound: Option<Amount>,
    interleave: Option<InterleaveSpec>,
}

impl Builder {
    fn declared(&self, name: &str) -> bool {
        self.owner.as_ref().map(|(a, _, _)| a.as_str()) == Some(name)
            || self.spenders.iter().any(|s| s.addr.as_str() == name)
            || self.extras.iter().any(|(a, _)| a.as_str() == name)
    }
}

/// Parses a scenario document. Errors carry the offending line number.
pub fn parse_scenario(text: &str) -> Result<Scenario, ParseError> {
    let mut b = Builder {
        strategy: None,
        owner: None,
        spenders: Vec::new(),
        extras: Vec::new(),
        trusted: false,
        lowering: LoweringMode::Native,
        intents: Vec::new(),
        declared_bound: None,
        interleave: None,
    };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "strategy" => parse_strategy(&mut b, &tokens, line_no)?,
            "owner" => parse_owner(&mut b, &tokens, line_no)?,
            "spender" => parse_spender(&mut b, &tokens, line_no)?,
            "actor" => parse_actor(&mut b, &tokens, line_no)?,
            "trusted" => {
                expect_len(&tokens, 1, "trusted", line_no)?;
                b.trusted = true;
            }
            "lowering" => parse_lowering(&mut b, &tokens, line_no)?,
            "allow" => parse_allow(&mut b, &tokens, line_no)?,
            "bound" => {
                expect_len(&tokens, 2, "bound <amount>", line_no)?;
                b.declared_bound = Some(amount(tokens[1], line_no)?);
            }
            "interleave" => parse_interleave(&mut b, &tokens, line_no)?,
            other => return Err(err(line_no, format!("unknown directive `{other}`"))),
        }
    }

    let strategy = b.strategy.ok_or(ParseError::MissingDirective("strategy"))?;
    let (owner, owner_balance, owner_policy) =
        b.owner.ok_or(ParseError::MissingDirective("owner"))?;
    let scenario = Scenario {
        strategy,
        owner,
        owner_balance,
        owner_policy,
        spenders: b.spenders,
        extras: b.extras,
        trusted: b.trusted,
        lowering: b.lowering,
        intents: b.intents,
        declared_bound: b.declared_bound,
        interleave: b.interleave,
    };
    scenario
        .validate()
        .map_err(|e| ParseError::Invalid(e.to_string()))?;
    Ok(scenario)
}

fn expect_len(tokens: &[&str], len: usize, usage: &str, line: usize) -> Result<(), ParseError> {
    if tokens.len() != len {
        return Err(err(line, format!("expected `{usage}`")));
    }
    Ok(())
}

fn amount(token: &str, line: usize) -> Result<Amount, ParseError> {
    token.parse().map_err(|e| err(line, format!("{e}")))
}

fn parse_strategy(b: &mut Builder, tokens: &[&str], line: usize) -> Result<(), ParseError> {
    expect_len(tokens, 2, "strategy <name>", line)?;
    if b.strategy.is_some() {
        return Err(err(line, "duplicate `strategy` directive"));
    }
    let name: StrategyName = tokens[1].parse().map_err(|e| err(line, format!("{e}")))?;
    b.strategy = Some(name);
    Ok(())
}

fn parse_owner(b: &mut Builder, tokens: &[&str], line: usize) -> Result<(), ParseError> {
    expect_len(
        tokens,
        6,
        "owner <name> balance <amount> policy <direct|zero-first>",
        line,
    )?;
    if b.owner.is_some() {
        return Err(err(line, "duplicate `owner` directive"));
    }
    if tokens[2] != "balance" || tokens[4] != "policy" {
        return Err(err(
            line,
            "expected `owner <name> balance <amount> policy <direct|zero-first>`",
        ));
    }
    let name = tokens[1];
    if b.declared(name) {
        return Err(err(
            line,
            format!("actor `{name}` is declared more than once"),
        ));
    }
    let balance = amount(tokens[3], line)?;
    let policy = match tokens[5] {
        "direct" => OwnerPolicy::DirectAdjust,
        "zero-first" => OwnerPolicy::ZeroFirst,
        other => return Err(err(line, format!("unknown owner policy `{other}`"))),
    };
    b.owner = Some((Address::new(name), balance, policy));
    Ok(())
}

fn parse_spender(b: &mut Builder, tokens: &[&str], line: usize) -> Result<(), ParseError> {
    // spender <name> [balance <amount>] (frontrunner [boost <n>] [to <actor>] | passive)
    if tokens.len() < 3 {
        return Err(err(
            line,
            "expected `spender <name> [balance <amount>] <frontrunner|passive> ...`",
        ));
    }
    let name = tokens[1];
    if b.declared(name) {
        return Err(err(
            line,
            format!("actor `{name}` is declared more than once"),
        ));
    }
    let mut rest = &tokens[2..];
    let mut balance = Amount::zero();
    if rest.first() == Some(&"balance") {
        if rest.len() < 2 {
            return Err(err(line, "`balance` needs an amount"));
        }
        balance = amount(rest[1], line)?;
        rest = &rest[2..];
    }
    let policy = match rest.first() {
        Some(&"passive") => {
            if rest.len() != 1 {
                return Err(err(line, "`passive` takes no arguments"));
            }
            AdversaryPolicy::Passive
        }
        Some(&"frontrunner") => {
            let mut boost = 10u64;
            let mut recipient = None;
            let mut i = 1;
            while i < rest.len() {
                match rest[i] {
                    "boost" => {
                        let value = rest
                            .get(i + 1)
                            .ok_or_else(|| err(line, "`boost` needs a value"))?;
                        boost = value
                            .parse()
                            .map_err(|_| err(line, format!("invalid boost `{value}`")))?;
                        i += 2;
                    }
                    "to" => {
                        let value = rest
                            .get(i + 1)
                            .ok_or_else(|| err(line, "`to` needs an actor"))?;
                        recipient = Some(Address::new(*value));
                        i += 2;
                    }
                    other => {
                        return Err(err(line, format!("unknown frontrunner option `{other}`")))
                    }
                }
            }
            AdversaryPolicy::FrontRunner {
                priority_boost: boost,
                recipient,
            }
        }
        _ => {
            return Err(err(
                line,
                "spender needs a policy: `frontrunner [boost <n>] [to <actor>]` or `passive`",
            ))
        }
    };
    b.spenders.push(SpenderSpec {
        addr: Address::new(name),
        balance,
        policy,
    });
    Ok(())
}

fn parse_actor(b: &mut Builder, tokens: &[&str], line: usize) -> Result<(), ParseError> {
    expect_len(tokens, 4, "actor <name> balance <amount>", line)?;
    if tokens[2] != "balance" {
        return Err(err(line, "expected `actor <name> balance <amount>`"));
    }
    let name = tokens[1];
    if b.declared(name) {
        return Err(err(
            line,
            format!("actor `{name}` is declared more than once"),
        ));
    }
    let balance = amount(tokens[3], line)?;
    b.extras.push((Address::new(name), balance));
    Ok(())
}

fn parse_lowering(b: &mut Builder, tokens: &[&str], line: usize) -> Result<(), ParseError> {
    expect_len(tokens, 2, "lowering <native|erc20-only>", line)?;
    b.lowering = match tokens[1] {
        "native" => LoweringMode::Native,
        "erc20-only" => LoweringMode::Erc20Only,
        other => return Err(err(line, format!("unknown lowering mode `{other}`"))),
    };
    Ok(())
}

fn parse_allow(b: &mut Builder, tokens: &[&str], line: usize) -> Result<(), ParseError> {
    expect_len(tokens, 3, "allow <spender> <amount>", line)?;
    let name = tokens[1];
    if !b.spenders.iter().any(|s| s.addr.as_str() == name) {
        return Err(err(line, format!("`{name}` is not a declared spender")));
    }
    let value = amount(tokens[2], line)?;
    b.intents.push(Intent {
        spender: Address::new(name),
        value,
    });
    Ok(())
}

fn parse_interleave(b: &mut Builder, tokens: &[&str], line: usize) -> Result<(), ParseError> {
    match tokens.get(1) {
        Some(&"exhaustive") => {
            expect_len(tokens, 2, "interleave exhaustive", line)?;
            b.interleave = Some(InterleaveSpec::Exhaustive);
            Ok(())
        }
        Some(&"sample") => {
            expect_len(tokens, 5, "interleave sample <count> seed <seed>", line)?;
            if tokens[3] != "seed" {
                return Err(err(
                    line,
                    "expected `interleave sample <count> seed <seed>`",
                ));
            }
            let count = tokens[2]
                .parse()
                .map_err(|_| err(line, format!("invalid count `{}`", tokens[2])))?;
            let seed = tokens[4]
                .parse()
                .map_err(|_| err(line, format!("invalid seed `{}`", tokens[4])))?;
            b.interleave = Some(InterleaveSpec::Sample { count, seed });
            Ok(())
        }
        _ => Err(err(
            line,
            "expected `interleave exhaustive` or `interleave sample <count> seed <seed>`",
        )),
    }
}

/// Canonical text form; `parse_scenario(render_scenario(s)) == s`.
pub fn render_scenario(s: &Scenario) -> String {
    let mut out = String::new();
    writeln!(out, "strategy {}", s.strategy).unwrap();
    let policy = match s.owner_policy {
        OwnerPolicy::DirectAdjust => "direct",
        OwnerPolicy::ZeroFirst => "zero-first",
    };
    writeln!(
        out,
        "owner {} balance {} policy {policy}",
        s.owner, s.owner_balance
    )
    .unwrap();
    for spec in &s.spenders {
        match &spec.policy {
            AdversaryPolicy::Passive => {
                writeln!(
                    out,
                    "spender {} balance {} passive",
                    spec.addr, spec.balance
                )
                .unwrap();
            }
            AdversaryPolicy::FrontRunner {
                priority_boost,
                recipient,
            } => {
                write!(
                    out,
                    "spender {} balance {} frontrunner boost {priority_boost}",
                    spec.addr, spec.balance
                )
                .unwrap();
                if let Some(r) = recipient {
                    write!(out, " to {r}").unwrap();
                }
                out.push('\n');
            }
        }
    }
    for (addr, balance) in &s.extras {
        writeln!(out, "actor {addr} balance {balance}").unwrap();
    }
    if s.trusted {
        out.push_str("trusted\n");
    }
    if s.lowering == LoweringMode::Erc20Only {
        out.push_str("lowering erc20-only\n");
    }
    for intent in &s.intents {
        writeln!(out, "allow {} {}", intent.spender, intent.value).unwrap();
    }
    if let Some(bound) = &s.declared_bound {
        writeln!(out, "bound {bound}").unwrap();
    }
    match s.interleave {
        Some(InterleaveSpec::Exhaustive) => out.push_str("interleave exhaustive\n"),
        Some(InterleaveSpec::Sample { count, seed }) => {
            writeln!(out, "interleave sample {count} seed {seed}").unwrap();
        }
        None => {}
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const CANONICAL: &str = "\
# the adjustment race against the baseline token
strategy standard-erc20
owner alice balance 1000 policy direct
spender bob frontrunner boost 10
allow bob 100
allow bob 50
";

    #[test]
    fn parses_the_canonical_document() {
        let scenario = parse_scenario(CANONICAL).unwrap();
        assert_eq!(scenario.strategy, StrategyName::StandardErc20);
        assert_eq!(scenario.owner, Address::new("alice"));
        assert_eq!(scenario.owner_balance, Amount::from(1000u64));
        assert_eq!(scenario.intents.len(), 2);
        assert!(scenario.spenders[0].policy.is_front_runner());
    }

    #[test]
    fn unknown_strategy_lists_valid_names() {
        let doc = CANONICAL.replace("standard-erc20", "erc20-classic");
        let e = parse_scenario(&doc).unwrap_err();
        let msg = e.to_string();
        assert!(msg.starts_with("line 2:"), "{msg}");
        assert!(msg.contains("erc20-classic"));
        assert!(msg.contains("proposal2-lifetime"));
    }

    #[test]
    fn undeclared_spender_in_allow_is_an_error() {
        let doc = CANONICAL.replace("allow bob 50", "allow mallory 50");
        let e = parse_scenario(&doc).unwrap_err();
        assert!(e.to_string().contains("mallory"));
    }

    #[test]
    fn duplicate_actor_is_an_error() {
        let doc = CANONICAL.replace(
            "spender bob frontrunner boost 10",
            "spender bob frontrunner boost 10\nspender bob passive",
        );
        let e = parse_scenario(&doc).unwrap_err();
        assert!(e.to_string().contains("more than once"));
    }

    #[test]
    fn non_numeric_amount_is_an_error() {
        let doc = CANONICAL.replace("allow bob 50", "allow bob fifty");
        let e = parse_scenario(&doc).unwrap_err();
        assert!(e.to_string().contains("fifty"));
    }

    #[test]
    fn unknown_directive_is_an_error() {
        let doc = format!("{CANONICAL}gas-price 20\n");
        let e = parse_scenario(&doc).unwrap_err();
        assert!(e.to_string().contains("gas-price"));
    }

    #[test]
    fn trusted_front_runner_is_rejected() {
        let doc = format!("{CANONICAL}trusted\n");
        let e = parse_scenario(&doc).unwrap_err();
        assert!(e.to_string().contains("trusted"));
    }

    #[test]
    fn render_round_trips() {
        let scenario = parse_scenario(CANONICAL).unwrap();
        let rendered = render_scenario(&scenario);
        assert_eq!(parse_scenario(&rendered).unwrap(), scenario);
    }
}
