//! Recursive-descent (LL) parser and validator for relation-spec documents.
//!
//! Grammar, one item per line (comments `#…`, whitespace free-form):
//!
//! ```text
//! document   := item*
//! item       := declaration | command
//! declaration:
//!   rel NAME = id
//!            | idn NUM
//!            | ceer { stages = [ stage (, stage)* ] }        stage := pairs
//!            | close NAME with pairs (bound NUM)?
//!            | construct VARIANT of NAME using NAME (, NAME)? (bound NUM)?
//!   set NAME = { NUM (, NUM)* } | residues mod NUM of { NUM (, NUM)* }
//!   fn NAME  = (table { NUM : NUM (, NUM : NUM)* })? tail TAIL
//!   default bound = NUM
//! TAIL       := identity | const NUM | mod NUM [ NUM (, NUM)* ]
//! VARIANT    := thm21-e | thm21-f | prop31
//! pairs      := [ ((NUM, NUM) (, (NUM, NUM))*)? ]
//! command:
//!   classes NAME                                   [--bound N] [--format F]
//!   closure NAME with pairs                        [--bound N] [--format F]
//!   construct VARIANT --base NAME --oracle NAME [--oracle-c NAME]
//!                                                  [--bound N] [--format F]
//!   reduce check NAME : NAME -> NAME               [--bound N]
//!   reduce (search|assert) NAME -> NAME            [--bound N] [--image-bound N]
//!   audit minimality NAME NAME                     [--bound N] [--threshold N]
//!   audit darkness NAME with NAME (, NAME)*        [--bound N]
//!   audit incomparability NAME NAME                [--bound N] [--image-bound N]
//!   chain NAME NAME --start N --len N
//!   (collapse-map|witness-map) NAME NAME           [--bound N]
//! ```
//!
//! Validation happens in the same pass: names are declared before use and
//! unique across relations, sets, and functions; references must match in
//! kind; moduli are nonzero; function tables have contiguous keys from 0;
//! residue tails carry exactly `modulus` values; and every bounded
//! operation either names a bound or follows a `default bound`
//! declaration. `audit darkness` and `witness-map` additionally require
//! their relation to be declared as `ceer`, because both depend on the
//! enumeration's occurrence order.

use std::collections::BTreeMap;

use eqred_core::{TailRule, Variant};

use crate::document::{
    Command, CommandOpts, Declaration, Item, OutputFormat, RelExpr, SetExpr, SpecDocument,
};
use crate::token::{tokenize, ParseError, Token, TokenKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Symbol {
    Rel { has_enum: bool },
    Set,
    Fn,
}

impl Symbol {
    fn kind_name(self) -> &'static str {
        match self {
            Symbol::Rel { .. } => "relation",
            Symbol::Set => "set",
            Symbol::Fn => "function",
        }
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    symbols: BTreeMap<String, Symbol>,
    default_bound: Option<u64>,
}

/// Parse and validate a document, or report the first error with its
/// line and column.
pub fn parse_spec(text: &str) -> Result<SpecDocument, ParseError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        symbols: BTreeMap::new(),
        default_bound: None,
    };
    let mut items = Vec::new();
    while parser.peek().kind != TokenKind::Eof {
        items.push(parser.item()?);
    }
    Ok(SpecDocument { items })
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let tok = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        tok
    }

    fn expect(&mut self, kind: TokenKind, context: &str) -> Result<Token, ParseError> {
        let tok = self.peek().clone();
        if tok.kind == kind {
            Ok(self.bump())
        } else {
            Err(ParseError::at(
                &tok,
                format!("expected {kind} {context}, found {}", tok.kind),
            ))
        }
    }

    fn num(&mut self, context: &str) -> Result<(u64, Token), ParseError> {
        let tok = self.peek().clone();
        if let TokenKind::Num(n) = tok.kind {
            self.bump();
            Ok((n, tok))
        } else {
            Err(ParseError::at(
                &tok,
                format!("expected a number {context}, found {}", tok.kind),
            ))
        }
    }

    fn name(&mut self, context: &str) -> Result<(String, Token), ParseError> {
        let tok = self.peek().clone();
        if let TokenKind::Ident(s) = &tok.kind {
            let s = s.clone();
            self.bump();
            Ok((s, tok))
        } else {
            Err(ParseError::at(
                &tok,
                format!("expected a name {context}, found {}", tok.kind),
            ))
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<Token, ParseError> {
        let tok = self.peek().clone();
        match &tok.kind {
            TokenKind::Ident(s) if s == kw => Ok(self.bump()),
            other => Err(ParseError::at(
                &tok,
                format!("expected '{kw}', found {other}"),
            )),
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().kind, TokenKind::Ident(s) if s == kw)
    }

    // -- validation helpers ------------------------------------------------

    fn declare(&mut self, name: &str, tok: &Token, symbol: Symbol) -> Result<(), ParseError> {
        if self.symbols.contains_key(name) {
            return Err(ParseError::at(tok, format!("duplicate name '{name}'")));
        }
        self.symbols.insert(name.to_string(), symbol);
        Ok(())
    }

    fn resolve(&self, name: &str, tok: &Token, want: &str) -> Result<Symbol, ParseError> {
        match self.symbols.get(name) {
            None => Err(ParseError::at(
                tok,
                format!("reference to undeclared name '{name}'"),
            )),
            Some(sym) => {
                if sym.kind_name() == want {
                    Ok(*sym)
                } else {
                    Err(ParseError::at(
                        tok,
                        format!("'{name}' is a {}, expected a {want}", sym.kind_name()),
                    ))
                }
            }
        }
    }

    fn rel_ref(&mut self, context: &str) -> Result<(String, Token), ParseError> {
        let (name, tok) = self.name(context)?;
        self.resolve(&name, &tok, "relation")?;
        Ok((name, tok))
    }

    fn enum_rel_ref(&mut self, op: &str, context: &str) -> Result<String, ParseError> {
        let (name, tok) = self.name(context)?;
        match self.resolve(&name, &tok, "relation")? {
            Symbol::Rel { has_enum: true } => Ok(name),
            _ => Err(ParseError::at(
                &tok,
                format!(
                    "{op} needs a relation declared as 'ceer' \
                     (it depends on the enumeration's occurrence order), \
                     but '{name}' is not"
                ),
            )),
        }
    }

    fn set_ref(&mut self, context: &str) -> Result<String, ParseError> {
        let (name, tok) = self.name(context)?;
        self.resolve(&name, &tok, "set")?;
        Ok(name)
    }

    fn fn_ref(&mut self, context: &str) -> Result<String, ParseError> {
        let (name, tok) = self.name(context)?;
        self.resolve(&name, &tok, "function")?;
        Ok(name)
    }

    fn need_bound(&self, own: Option<u64>, tok: &Token, what: &str) -> Result<(), ParseError> {
        if own.or(self.default_bound).is_none() {
            return Err(ParseError::at(
                tok,
                format!("{what} needs a bound: give one or declare 'default bound = N' first"),
            ));
        }
        Ok(())
    }

    // -- items ---------------------------------------------------------------

    fn item(&mut self) -> Result<Item, ParseError> {
        let tok = self.peek().clone();
        let word = match &tok.kind {
            TokenKind::Ident(s) => s.clone(),
            other => {
                return Err(ParseError::at(
                    &tok,
                    format!("expected a declaration or command, found {other}"),
                ))
            }
        };
        match word.as_str() {
            "rel" => self.rel_declaration().map(Item::Declaration),
            "set" => self.set_declaration().map(Item::Declaration),
            "fn" => self.fn_declaration().map(Item::Declaration),
            "default" => {
                self.bump();
                self.keyword("bound")?;
                self.expect(TokenKind::Eq, "after 'default bound'")?;
                let (n, _) = self.num("for the default bound")?;
                self.default_bound = Some(n);
                Ok(Item::Declaration(Declaration::DefaultBound(n)))
            }
            "classes" | "closure" | "construct" | "reduce" | "audit" | "chain"
            | "collapse-map" | "witness-map" => self.command().map(Item::Command),
            other => Err(ParseError::at(
                &tok,
                format!(
                    "expected a declaration ('rel', 'set', 'fn', 'default') \
                     or a command, found '{other}'"
                ),
            )),
        }
    }

    // -- declarations ----------------------------------------------------

    fn rel_declaration(&mut self) -> Result<Declaration, ParseError> {
        self.keyword("rel")?;
        let (name, name_tok) = self.name("for the relation")?;
        self.expect(TokenKind::Eq, "after the relation name")?;
        let head = self.peek().clone();
        let (expr, has_enum) = match &head.kind {
            TokenKind::Ident(s) => match s.as_str() {
                "id" => {
                    self.bump();
                    (RelExpr::Id, false)
                }
                "idn" => {
                    self.bump();
                    let (n, n_tok) = self.num("after 'idn'")?;
                    if n == 0 {
                        return Err(ParseError::at(&n_tok, "invalid modulus 0 for 'idn'"));
                    }
                    (RelExpr::IdN(n), false)
                }
                "ceer" => {
                    self.bump();
                    self.expect(TokenKind::LBrace, "after 'ceer'")?;
                    self.keyword("stages")?;
                    self.expect(TokenKind::Eq, "after 'stages'")?;
                    self.expect(TokenKind::LBracket, "to open the stage list")?;
                    let mut stages = Vec::new();
                    if self.peek().kind != TokenKind::RBracket {
                        loop {
                            stages.push(self.pair_list("for a stage")?);
                            if self.peek().kind == TokenKind::Comma {
                                self.bump();
                            } else {
                                break;
                            }
                        }
                    }
                    self.expect(TokenKind::RBracket, "to close the stage list")?;
                    self.expect(TokenKind::RBrace, "to close 'ceer'")?;
                    (RelExpr::Ceer { stages }, true)
                }
                "close" => {
                    self.bump();
                    let (base, _) = self.rel_ref("of the relation to close")?;
                    self.keyword("with")?;
                    let pairs = self.pair_list("of pairs to merge")?;
                    let bound = self.opt_bound_suffix()?;
                    self.need_bound(bound, &name_tok, &format!("'{name}'"))?;
                    (RelExpr::Close { base, pairs, bound }, false)
                }
                "construct" => {
                    self.bump();
                    let variant = self.variant()?;
                    self.keyword("of")?;
                    let (base, _) = self.rel_ref("of the base relation")?;
                    self.keyword("using")?;
                    let oracle_b = self.set_ref("of the oracle set")?;
                    let oracle_c = if self.peek().kind == TokenKind::Comma {
                        self.bump();
                        Some(self.set_ref("of the second oracle set")?)
                    } else {
                        None
                    };
                    self.check_variant_arity(variant, oracle_c.is_some(), &name_tok)?;
                    let bound = self.opt_bound_suffix()?;
                    self.need_bound(bound, &name_tok, &format!("'{name}'"))?;
                    (
                        RelExpr::Construct {
                            variant,
                            base,
                            oracle_b,
                            oracle_c,
                            bound,
                        },
                        false,
                    )
                }
                other => {
                    return Err(ParseError::at(
                        &head,
                        format!(
                            "expected 'id', 'idn', 'ceer', 'close', or 'construct', \
                             found '{other}'"
                        ),
                    ))
                }
            },
            other => {
                return Err(ParseError::at(
                    &head,
                    format!("expected a relation expression, found {other}"),
                ))
            }
        };
        self.declare(&name, &name_tok, Symbol::Rel { has_enum })?;
        Ok(Declaration::Rel { name, expr })
    }

    fn set_declaration(&mut self) -> Result<Declaration, ParseError> {
        self.keyword("set")?;
        let (name, name_tok) = self.name("for the set")?;
        self.expect(TokenKind::Eq, "after the set name")?;
        let expr = if self.at_keyword("residues") {
            self.bump();
            self.keyword("mod")?;
            let (modulus, m_tok) = self.num("after 'mod'")?;
            if modulus == 0 {
                return Err(ParseError::at(&m_tok, "invalid modulus 0 for 'residues'"));
            }
            self.keyword("of")?;
            let mut residues = self.member_list()?;
            for r in &mut residues {
                *r %= modulus;
            }
            residues.sort_unstable();
            residues.dedup();
            SetExpr::Residues { modulus, residues }
        } else {
            let mut members = self.member_list()?;
            members.sort_unstable();
            members.dedup();
            SetExpr::Explicit(members)
        };
        self.declare(&name, &name_tok, Symbol::Set)?;
        Ok(Declaration::Set { name, expr })
    }

    fn fn_declaration(&mut self) -> Result<Declaration, ParseError> {
        self.keyword("fn")?;
        let (name, name_tok) = self.name("for the function")?;
        self.expect(TokenKind::Eq, "after the function name")?;
        let mut table = Vec::new();
        if self.at_keyword("table") {
            self.bump();
            let open = self.expect(TokenKind::LBrace, "after 'table'")?;
            let mut entries: Vec<(u64, u64, Token)> = Vec::new();
            if self.peek().kind != TokenKind::RBrace {
                loop {
                    let (k, k_tok) = self.num("for a table key")?;
                    self.expect(TokenKind::Colon, "between table key and value")?;
                    let (v, _) = self.num("for a table value")?;
                    entries.push((k, v, k_tok));
                    if self.peek().kind == TokenKind::Comma {
                        self.bump();
                    } else {
                        break;
                    }
                }
            }
            self.expect(TokenKind::RBrace, "to close the table")?;
            entries.sort_by_key(|&(k, _, _)| k);
            for (i, (k, v, k_tok)) in entries.iter().enumerate() {
                if *k < i as u64 {
                    return Err(ParseError::at(k_tok, format!("duplicate table key {k}")));
                }
                if *k > i as u64 {
                    return Err(ParseError::at(
                        &open,
                        format!("table keys must be contiguous from 0; missing {i}"),
                    ));
                }
                table.push(*v);
            }
        }
        self.keyword("tail")?;
        let tail_tok = self.peek().clone();
        let (tail_word, _) = self.name("for the tail rule")?;
        let tail = match tail_word.as_str() {
            "identity" => TailRule::Identity,
            "const" => {
                let (c, _) = self.num("after 'const'")?;
                TailRule::Constant(c)
            }
            "mod" => {
                let (modulus, m_tok) = self.num("after 'mod'")?;
                if modulus == 0 {
                    return Err(ParseError::at(&m_tok, "invalid modulus 0 for a residue tail"));
                }
                self.expect(TokenKind::LBracket, "to open the residue values")?;
                let mut values = Vec::new();
                if self.peek().kind != TokenKind::RBracket {
                    loop {
                        values.push(self.num("for a residue value")?.0);
                        if self.peek().kind == TokenKind::Comma {
                            self.bump();
                        } else {
                            break;
                        }
                    }
                }
                self.expect(TokenKind::RBracket, "to close the residue values")?;
                if values.len() as u64 != modulus {
                    return Err(ParseError::at(
                        &m_tok,
                        format!(
                            "tail mod {modulus} needs exactly {modulus} values, got {}",
                            values.len()
                        ),
                    ));
                }
                TailRule::Residue { modulus, values }
            }
            other => {
                return Err(ParseError::at(
                    &tail_tok,
                    format!("expected 'identity', 'const', or 'mod', found '{other}'"),
                ))
            }
        };
        self.declare(&name, &name_tok, Symbol::Fn)?;
        Ok(Declaration::Fn { name, table, tail })
    }

    // -- commands ----------------------------------------------------------

    fn command(&mut self) -> Result<Command, ParseError> {
        let start = self.peek().clone();
        let (word, _) = self.name("for a command")?;
        let cmd = match word.as_str() {
            "classes" => {
                let (rel, _) = self.rel_ref("of the relation to list")?;
                let opts = self.flags("classes", &["bound", "format"])?;
                self.need_bound(opts.bound, &start, "'classes'")?;
                Command::Classes { rel, opts }
            }
            "closure" => {
                let (rel, _) = self.rel_ref("of the relation to close")?;
                self.keyword("with")?;
                let pairs = self.pair_list("of pairs to merge")?;
                let opts = self.flags("closure", &["bound", "format"])?;
                self.need_bound(opts.bound, &start, "'closure'")?;
                Command::Closure { rel, pairs, opts }
            }
            "construct" => {
                let variant = self.variant()?;
                let mut base: Option<String> = None;
                let mut oracle_b: Option<String> = None;
                let mut oracle_c: Option<String> = None;
                let mut opts = CommandOpts::default();
                let mut seen: Vec<String> = Vec::new();
                while let TokenKind::Flag(flag) = self.peek().kind.clone() {
                    let flag_tok = self.bump();
                    if seen.contains(&flag) {
                        return Err(ParseError::at(&flag_tok, format!("duplicate flag --{flag}")));
                    }
                    seen.push(flag.clone());
                    match flag.as_str() {
                        "base" => base = Some(self.rel_ref("after '--base'")?.0),
                        "oracle" => oracle_b = Some(self.set_ref("after '--oracle'")?),
                        "oracle-c" => oracle_c = Some(self.set_ref("after '--oracle-c'")?),
                        "bound" => opts.bound = Some(self.num("after '--bound'")?.0),
                        "format" => opts.format = Some(self.format_value()?),
                        other => {
                            return Err(ParseError::at(
                                &flag_tok,
                                format!("flag --{other} is not valid for construct"),
                            ))
                        }
                    }
                }
                let base = base.ok_or_else(|| {
                    ParseError::at(&start, "construct requires --base".to_string())
                })?;
                let oracle_b = oracle_b.ok_or_else(|| {
                    ParseError::at(&start, "construct requires --oracle".to_string())
                })?;
                self.check_variant_arity(variant, oracle_c.is_some(), &start)?;
                self.need_bound(opts.bound, &start, "'construct'")?;
                Command::Construct {
                    variant,
                    base,
                    oracle_b,
                    oracle_c,
                    opts,
                }
            }
            "reduce" => {
                let mode_tok = self.peek().clone();
                let (mode, _) = self.name("after 'reduce'")?;
                match mode.as_str() {
                    "check" => {
                        let func = self.fn_ref("of the candidate function")?;
                        self.expect(TokenKind::Colon, "after the function name")?;
                        let (source, _) = self.rel_ref("of the source relation")?;
                        self.expect(TokenKind::Arrow, "between source and target")?;
                        let (target, _) = self.rel_ref("of the target relation")?;
                        let opts = self.flags("reduce check", &["bound"])?;
                        self.need_bound(opts.bound, &start, "'reduce check'")?;
                        Command::ReduceCheck {
                            func,
                            source,
                            target,
                            opts,
                        }
                    }
                    "search" | "assert" => {
                        let (source, _) = self.rel_ref("of the source relation")?;
                        self.expect(TokenKind::Arrow, "between source and target")?;
                        let (target, _) = self.rel_ref("of the target relation")?;
                        let opts =
                            self.flags(&format!("reduce {mode}"), &["bound", "image-bound"])?;
                        self.need_bound(opts.bound, &start, &format!("'reduce {mode}'"))?;
                        if mode == "search" {
                            Command::ReduceSearch {
                                source,
                                target,
                                opts,
                            }
                        } else {
                            Command::ReduceAssert {
                                source,
                                target,
                                opts,
                            }
                        }
                    }
                    other => {
                        return Err(ParseError::at(
                            &mode_tok,
                            format!("expected 'check', 'search', or 'assert', found '{other}'"),
                        ))
                    }
                }
            }
            "audit" => {
                let mode_tok = self.peek().clone();
                let (mode, _) = self.name("after 'audit'")?;
                match mode.as_str() {
                    "minimality" => {
                        let (rel, _) = self.rel_ref("of the relation to audit")?;
                        let witness_set = self.set_ref("of the witness set")?;
                        let opts = self.flags("audit minimality", &["bound", "threshold"])?;
                        self.need_bound(opts.bound, &start, "'audit minimality'")?;
                        Command::AuditMinimality {
                            rel,
                            witness_set,
                            opts,
                        }
                    }
                    "darkness" => {
                        let rel =
                            self.enum_rel_ref("'audit darkness'", "of the relation to audit")?;
                        self.keyword("with")?;
                        let mut candidates = vec![self.fn_ref("of a candidate function")?];
                        while self.peek().kind == TokenKind::Comma {
                            self.bump();
                            candidates.push(self.fn_ref("of a candidate function")?);
                        }
                        let opts = self.flags("audit darkness", &["bound"])?;
                        self.need_bound(opts.bound, &start, "'audit darkness'")?;
                        Command::AuditDarkness {
                            rel,
                            candidates,
                            opts,
                        }
                    }
                    "incomparability" => {
                        let (left, _) = self.rel_ref("of the first relation")?;
                        let (right, _) = self.rel_ref("of the second relation")?;
                        let opts =
                            self.flags("audit incomparability", &["bound", "image-bound"])?;
                        self.need_bound(opts.bound, &start, "'audit incomparability'")?;
                        Command::AuditIncomparability { left, right, opts }
                    }
                    other => {
                        return Err(ParseError::at(
                            &mode_tok,
                            format!(
                                "expected 'minimality', 'darkness', or 'incomparability', \
                                 found '{other}'"
                            ),
                        ))
                    }
                }
            }
            "chain" => {
                let func_f = self.fn_ref("of the first function")?;
                let func_g = self.fn_ref("of the second function")?;
                let mut start_val: Option<u64> = None;
                let mut len: Option<u64> = None;
                while let TokenKind::Flag(flag) = self.peek().kind.clone() {
                    let flag_tok = self.bump();
                    match flag.as_str() {
                        "start" if start_val.is_none() => {
                            start_val = Some(self.num("after '--start'")?.0)
                        }
                        "len" if len.is_none() => len = Some(self.num("after '--len'")?.0),
                        "start" | "len" => {
                            return Err(ParseError::at(
                                &flag_tok,
                                format!("duplicate flag --{flag}"),
                            ))
                        }
                        other => {
                            return Err(ParseError::at(
                                &flag_tok,
                                format!("flag --{other} is not valid for chain"),
                            ))
                        }
                    }
                }
                let (Some(start_val), Some(len)) = (start_val, len) else {
                    return Err(ParseError::at(&start, "chain requires --start and --len"));
                };
                Command::Chain {
                    func_f,
                    func_g,
                    start: start_val,
                    len,
                }
            }
            "collapse-map" => {
                let func = self.fn_ref("of the function to collapse")?;
                let (rel, _) = self.rel_ref("of the target relation")?;
                let opts = self.flags("collapse-map", &["bound"])?;
                self.need_bound(opts.bound, &start, "'collapse-map'")?;
                Command::CollapseMap { func, rel, opts }
            }
            "witness-map" => {
                let func = self.fn_ref("of the function to invert")?;
                let rel = self.enum_rel_ref("'witness-map'", "of the target relation")?;
                let opts = self.flags("witness-map", &["bound"])?;
                self.need_bound(opts.bound, &start, "'witness-map'")?;
                Command::WitnessMap { func, rel, opts }
            }
            other => {
                return Err(ParseError::at(
                    &start,
                    format!("unknown command '{other}'"),
                ))
            }
        };
        Ok(cmd)
    }

    // -- shared pieces -----------------------------------------------------

    fn variant(&mut self) -> Result<Variant, ParseError> {
        let tok = self.peek().clone();
        let (word, _) = self.name("for the construction variant")?;
        match word.as_str() {
            "thm21-e" => Ok(Variant::Thm21E),
            "thm21-f" => Ok(Variant::Thm21F),
            "prop31" => Ok(Variant::Prop31),
            other => Err(ParseError::at(
                &tok,
                format!("expected 'thm21-e', 'thm21-f', or 'prop31', found '{other}'"),
            )),
        }
    }

    fn check_variant_arity(
        &self,
        variant: Variant,
        has_c: bool,
        tok: &Token,
    ) -> Result<(), ParseError> {
        match (variant, has_c) {
            (Variant::Prop31, false) => Err(ParseError::at(
                tok,
                "prop31 needs two oracle sets".to_string(),
            )),
            (Variant::Thm21E | Variant::Thm21F, true) => Err(ParseError::at(
                tok,
                format!("{variant} takes a single oracle set"),
            )),
            _ => Ok(()),
        }
    }

    fn opt_bound_suffix(&mut self) -> Result<Option<u64>, ParseError> {
        if self.at_keyword("bound") {
            self.bump();
            Ok(Some(self.num("after 'bound'")?.0))
        } else {
            Ok(None)
        }
    }

    fn pair_list(&mut self, context: &str) -> Result<Vec<(u64, u64)>, ParseError> {
        self.expect(TokenKind::LBracket, context)?;
        let mut pairs = Vec::new();
        if self.peek().kind != TokenKind::RBracket {
            loop {
                self.expect(TokenKind::LParen, "to open a pair")?;
                let (a, _) = self.num("for the pair's first element")?;
                self.expect(TokenKind::Comma, "between pair elements")?;
                let (b, _) = self.num("for the pair's second element")?;
                self.expect(TokenKind::RParen, "to close the pair")?;
                pairs.push((a, b));
                if self.peek().kind == TokenKind::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect(TokenKind::RBracket, "to close the pair list")?;
        Ok(pairs)
    }

    fn member_list(&mut self) -> Result<Vec<u64>, ParseError> {
        self.expect(TokenKind::LBrace, "to open the member list")?;
        let mut members = Vec::new();
        if self.peek().kind != TokenKind::RBrace {
            loop {
                members.push(self.num("for a member")?.0);
                if self.peek().kind == TokenKind::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect(TokenKind::RBrace, "to close the member list")?;
        Ok(members)
    }

    fn format_value(&mut self) -> Result<OutputFormat, ParseError> {
        let tok = self.peek().clone();
        let (word, _) = self.name("after '--format'")?;
        match word.as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "dot" => Ok(OutputFormat::Dot),
            "text" => Ok(OutputFormat::Text),
            other => Err(ParseError::at(
                &tok,
                format!("expected 'csv', 'dot', or 'text', found '{other}'"),
            )),
        }
    }

    fn flags(&mut self, cmd: &str, allowed: &[&str]) -> Result<CommandOpts, ParseError> {
        let mut opts = CommandOpts::default();
        let mut seen: Vec<String> = Vec::new();
        while let TokenKind::Flag(flag) = self.peek().kind.clone() {
            let flag_tok = self.bump();
            if !allowed.contains(&flag.as_str()) {
                return Err(ParseError::at(
                    &flag_tok,
                    format!("flag --{flag} is not valid for {cmd}"),
                ));
            }
            if seen.contains(&flag) {
                return Err(ParseError::at(&flag_tok, format!("duplicate flag --{flag}")));
            }
            seen.push(flag.clone());
            match flag.as_str() {
                "bound" => opts.bound = Some(self.num("after '--bound'")?.0),
                "image-bound" => opts.image_bound = Some(self.num("after '--image-bound'")?.0),
                "threshold" => opts.threshold = Some(self.num("after '--threshold'")?.0),
                "format" => opts.format = Some(self.format_value()?),
                _ => unreachable!("allowlist covers all flags"),
            }
        }
        Ok(opts)
    }
}
