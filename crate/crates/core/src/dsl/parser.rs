//! Recursive-descent parser.
//!
//! Recovery is per declaration: a bad item is reported and the parser skips
//! to the next `;` (or the end of the enclosing block), so one run reports
//! as many problems as possible. Duplicate names are semantic errors caught
//! here, with the span of the offending declaration.

use super::lexer::{Lexer, Tok, Token};
use super::ParseResult;
use crate::decimal::Decimal;
use crate::diag::{Diagnostic, DiagnosticCode as Code, Location, SourceSpan};
use crate::model::{
    Actor, ActorKind, Allocation, DurationBound, DurationMs, Interaction, Message, Parameter,
    Response, SystemModel, TypeTag, UseCase, ValueDomain,
};

pub fn parse(text: &str, file: &str) -> ParseResult {
    let (tokens, mut diagnostics) = Lexer::new(text, file).tokenize();
    let mut parser = Parser {
        tokens,
        pos: 0,
        diags: Vec::new(),
    };
    let model = parser.model();
    diagnostics.append(&mut parser.diags);
    let has_errors = diagnostics.iter().any(Diagnostic::is_error);
    ParseResult {
        model: if has_errors { None } else { Some(model) },
        diagnostics,
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    diags: Vec<Diagnostic>,
}

impl Parser {
    fn model(&mut self) -> SystemModel {
        let mut model = SystemModel::new("unnamed");
        let mut saw_system = false;
        loop {
            match self.peek().clone() {
                Tok::Eof => break,
                Tok::Ident(word) if word == "system" && !saw_system => {
                    saw_system = true;
                    self.bump();
                    self.system_block(&mut model);
                }
                Tok::Ident(word) if word == "interaction" => {
                    self.bump();
                    if let Some((interaction, name_span)) = self.interaction_block() {
                        if model.interactions.iter().any(|i| i.name == interaction.name) {
                            self.semantic_duplicate("interaction", &interaction.name, name_span);
                        } else {
                            model.interactions.push(interaction);
                        }
                    }
                }
                _ => {
                    let expected = if saw_system {
                        "`interaction`"
                    } else {
                        "`system`"
                    };
                    self.syntax_error(format!("expected {expected}, found {}", self.peek()));
                    self.bump();
                    self.recover_to_top_level();
                }
            }
        }
        model
    }

    fn system_block(&mut self, model: &mut SystemModel) {
        if let Some(name) = self.expect_ident("system name") {
            model.name = name;
        }
        if !self.expect(&Tok::LBrace) {
            self.recover_to_top_level();
            return;
        }
        loop {
            match self.peek().clone() {
                Tok::RBrace => {
                    self.bump();
                    return;
                }
                Tok::Eof => {
                    self.syntax_error("unclosed `system` block");
                    return;
                }
                Tok::Ident(word) => {
                    self.bump();
                    let ok = match word.as_str() {
                        "actor" => self.actor_decl(model),
                        "object" => self.object_decl(model),
                        "usecase" => self.usecase_decl(model),
                        other => {
                            self.syntax_error(format!(
                                "expected `actor`, `object` or `usecase`, found `{other}`"
                            ));
                            false
                        }
                    };
                    if !ok {
                        self.recover_past_semi();
                    }
                }
                _ => {
                    self.syntax_error(format!(
                        "expected a declaration, found {}",
                        self.peek()
                    ));
                    self.recover_past_semi();
                }
            }
        }
    }

    fn actor_decl(&mut self, model: &mut SystemModel) -> bool {
        let Some(name) = self.expect_ident("actor name") else {
            return false;
        };
        let name_span = self.previous_span();
        if !self.expect_word("kind") {
            return false;
        }
        let Some(kind_word) = self.expect_ident("actor kind") else {
            return false;
        };
        let kind = match kind_word.as_str() {
            "human" => ActorKind::Human,
            "external" => ActorKind::ExternalSystem,
            other => {
                self.syntax_error_at_previous(format!(
                    "actor kind must be `human` or `external`, found `{other}`"
                ));
                return false;
            }
        };
        if !self.expect(&Tok::Semi) {
            return false;
        }
        if model.is_declared_participant(&name) {
            self.semantic_duplicate("participant", &name, name_span);
        } else {
            model.actors.push(Actor { name, kind });
        }
        true
    }

    fn object_decl(&mut self, model: &mut SystemModel) -> bool {
        let Some(name) = self.expect_ident("object name") else {
            return false;
        };
        let name_span = self.previous_span();
        if !self.expect(&Tok::Semi) {
            return false;
        }
        if model.is_declared_participant(&name) {
            self.semantic_duplicate("participant", &name, name_span);
        } else {
            model.objects.push(name);
        }
        true
    }

    fn usecase_decl(&mut self, model: &mut SystemModel) -> bool {
        let Some(title) = self.expect_string("use case title") else {
            return false;
        };
        let title_span = self.previous_span();
        let mut linked_actors = Vec::new();
        let mut allocation = None;
        let mut description = String::new();
        loop {
            match self.peek().clone() {
                Tok::Semi => {
                    self.bump();
                    break;
                }
                Tok::Ident(word) if word == "actors" => {
                    self.bump();
                    let Some(list) = self.ident_list() else {
                        return false;
                    };
                    linked_actors = list;
                }
                Tok::Ident(word) if word == "allocation" => {
                    self.bump();
                    let Some(word) = self.expect_ident("allocation") else {
                        return false;
                    };
                    allocation = Some(match word.as_str() {
                        "inside" => Allocation::InsideSystem,
                        "process" => Allocation::OperationalProcess,
                        "excluded" => Allocation::Excluded,
                        other => {
                            self.syntax_error(format!(
                                "allocation must be `inside`, `process` or `excluded`, found `{other}`"
                            ));
                            return false;
                        }
                    });
                }
                Tok::Ident(word) if word == "desc" => {
                    self.bump();
                    let Some(text) = self.expect_string("description") else {
                        return false;
                    };
                    description = text;
                }
                other => {
                    self.syntax_error(format!(
                        "expected `actors`, `allocation`, `desc` or `;`, found {other}"
                    ));
                    return false;
                }
            }
        }
        if model.use_case(&title).is_some() {
            self.semantic_duplicate("usecase", &title, title_span);
            return true;
        }
        if let Some(allocation) = allocation {
            model.boundary.set(title.clone(), allocation);
        }
        model.use_cases.push(UseCase {
            name: title,
            linked_actors,
            description,
        });
        true
    }

    fn interaction_block(&mut self) -> Option<(Interaction, SourceSpan)> {
        let name = self.expect_ident("interaction name")?;
        let name_span = self.previous_span();
        let mut interaction = Interaction::new(name);
        if self.eat_word("realizes") {
            interaction.realizes = Some(self.expect_string("use case title")?);
        }
        if !self.expect(&Tok::LBrace) {
            self.recover_to_top_level();
            return None;
        }
        loop {
            match self.peek().clone() {
                Tok::RBrace => {
                    self.bump();
                    return Some((interaction, name_span));
                }
                Tok::Eof => {
                    self.syntax_error("unclosed `interaction` block");
                    return Some((interaction, name_span));
                }
                Tok::Ident(word) if word == "msg" => {
                    self.bump();
                    if !self.msg_decl(&mut interaction) {
                        self.recover_past_semi();
                    }
                }
                other => {
                    self.syntax_error(format!("expected `msg` or `}}`, found {other}"));
                    self.recover_past_semi();
                }
            }
        }
    }

    fn msg_decl(&mut self, interaction: &mut Interaction) -> bool {
        let Some(id) = self.expect_ident("message id") else {
            return false;
        };
        let id_span = self.previous_span();
        if !self.expect(&Tok::Colon) {
            return false;
        }
        let Some(sender) = self.expect_ident("sender") else {
            return false;
        };
        if !self.expect(&Tok::Arrow) {
            return false;
        }
        let Some(receiver) = self.expect_ident("receiver") else {
            return false;
        };
        if !self.expect(&Tok::Colon) {
            return false;
        }
        // Operations may be identifiers or quoted display names.
        let operation = match self.peek().clone() {
            Tok::Ident(word) => {
                self.bump();
                word
            }
            Tok::Str(text) => {
                self.bump();
                text
            }
            other => {
                self.syntax_error(format!("expected an operation name, found {other}"));
                return false;
            }
        };
        let Some(parameters) = self.param_list() else {
            return false;
        };

        let mut message = Message::new(id.clone(), sender, receiver, operation);
        message.parameters = parameters;

        loop {
            match self.peek().clone() {
                Tok::Semi => {
                    self.bump();
                    break;
                }
                Tok::Ident(word) if word == "after" => {
                    self.bump();
                    let Some(preds) = self.ident_list() else {
                        return false;
                    };
                    for pred in preds {
                        if message.predecessors.contains(&pred) {
                            self.diags.push(Diagnostic::warning(
                                Code::DuplicatePredecessor,
                                Location::Span(self.previous_span()),
                                format!("message `{id}` lists predecessor `{pred}` twice"),
                            ));
                        } else {
                            message.predecessors.push(pred);
                        }
                    }
                }
                Tok::Ident(word) if word == "deadline" => {
                    self.bump();
                    if !self.expect_word("send") {
                        return false;
                    }
                    let Some(bound) = self.duration_bound() else {
                        return false;
                    };
                    message.send_deadline = Some(bound);
                }
                Tok::Ident(word) if word == "treat" => {
                    self.bump();
                    let Some(bound) = self.duration_bound() else {
                        return false;
                    };
                    message.treatment_deadline = Some(bound);
                }
                Tok::Ident(word) if word == "response" => {
                    self.bump();
                    let Some(values) = self.param_list() else {
                        return false;
                    };
                    let mut response = Response {
                        values,
                        receive_deadline: None,
                    };
                    if self.eat_word("deadline") {
                        let Some(bound) = self.duration_bound() else {
                            return false;
                        };
                        response.receive_deadline = Some(bound);
                    }
                    message.response = Some(response);
                }
                other => {
                    self.syntax_error(format!(
                        "expected `after`, `deadline`, `treat`, `response` or `;`, found {other}"
                    ));
                    return false;
                }
            }
        }

        if interaction.message(&id).is_some() {
            self.diags.push(Diagnostic::error(
                Code::DuplicateName,
                Location::Span(id_span),
                format!("msg `{id}` is declared more than once"),
            ));
            return true;
        }
        for endpoint in [message.sender.clone(), message.receiver.clone()] {
            if !interaction.participants.contains(&endpoint) {
                interaction.participants.push(endpoint);
            }
        }
        interaction.messages.push(message);
        true
    }

    fn param_list(&mut self) -> Option<Vec<Parameter>> {
        if !self.expect(&Tok::LParen) {
            return None;
        }
        let mut params = Vec::new();
        if matches!(self.peek(), Tok::RParen) {
            self.bump();
            return Some(params);
        }
        loop {
            let name = self.expect_ident("parameter name")?;
            if !self.expect(&Tok::Colon) {
                return None;
            }
            let type_word = self.expect_ident("parameter type")?;
            let type_tag = match type_word.as_str() {
                "number" => TypeTag::Number,
                "text" => TypeTag::Text,
                "boolean" => TypeTag::Boolean,
                "enum" => TypeTag::Enum,
                other => {
                    self.syntax_error(format!(
                        "parameter type must be `number`, `text`, `boolean` or `enum`, found `{other}`"
                    ));
                    return None;
                }
            };
            let mut param = Parameter::new(name, type_tag);
            if self.eat_word("in") {
                param.domain = Some(self.domain()?);
            }
            params.push(param);
            match self.peek().clone() {
                Tok::Comma => {
                    self.bump();
                }
                Tok::RParen => {
                    self.bump();
                    return Some(params);
                }
                other => {
                    self.syntax_error(format!("expected `,` or `)`, found {other}"));
                    return None;
                }
            }
        }
    }

    fn domain(&mut self) -> Option<ValueDomain> {
        match self.peek().clone() {
            Tok::Number(lower) => {
                self.bump();
                if !self.expect(&Tok::DotDot) {
                    return None;
                }
                let upper = self.expect_number("interval upper bound")?;
                let unit = match self.peek().clone() {
                    Tok::Ident(unit) => {
                        self.bump();
                        Some(unit)
                    }
                    _ => None,
                };
                Some(ValueDomain::Interval { lower, upper, unit })
            }
            Tok::LBrace => {
                self.bump();
                let mut values = Vec::new();
                loop {
                    match self.peek().clone() {
                        Tok::Ident(v) => {
                            self.bump();
                            values.push(v);
                        }
                        Tok::Str(v) => {
                            self.bump();
                            values.push(v);
                        }
                        other => {
                            self.syntax_error(format!("expected an enum value, found {other}"));
                            return None;
                        }
                    }
                    match self.peek().clone() {
                        Tok::Comma => {
                            self.bump();
                        }
                        Tok::RBrace => {
                            self.bump();
                            return Some(ValueDomain::OneOf(values));
                        }
                        other => {
                            self.syntax_error(format!("expected `,` or `}}`, found {other}"));
                            return None;
                        }
                    }
                }
            }
            other => {
                self.syntax_error(format!(
                    "expected an interval or an enumerated set, found {other}"
                ));
                None
            }
        }
    }

    fn duration_bound(&mut self) -> Option<DurationBound> {
        let min = self.duration()?;
        if !self.expect(&Tok::DotDot) {
            return None;
        }
        let max = self.duration()?;
        Some(DurationBound { min, max })
    }

    fn duration(&mut self) -> Option<DurationMs> {
        let value = self.expect_number("duration")?;
        if value.scale() != 0 || value < Decimal::from_int(0) {
            self.syntax_error("durations must be non-negative integers");
            return None;
        }
        let unit = self.expect_ident("duration unit (`ms`, `s` or `min`)")?;
        let factor = match unit.as_str() {
            "ms" => 1,
            "s" => 1_000,
            "min" => 60_000,
            other => {
                self.syntax_error(format!(
                    "duration unit must be `ms`, `s` or `min`, found `{other}`"
                ));
                return None;
            }
        };
        let duration = value
            .to_string()
            .parse::<u64>()
            .ok()
            .and_then(|base| base.checked_mul(factor));
        match duration {
            Some(ms) => Some(DurationMs(ms)),
            None => {
                self.syntax_error(format!("duration `{value}{unit}` is out of range"));
                None
            }
        }
    }

    fn ident_list(&mut self) -> Option<Vec<String>> {
        let mut items = vec![self.expect_ident("name")?];
        while matches!(self.peek(), Tok::Comma) {
            self.bump();
            items.push(self.expect_ident("name")?);
        }
        Some(items)
    }

    // --- token utilities -------------------------------------------------

    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn bump(&mut self) {
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
    }

    fn current_span(&self) -> SourceSpan {
        self.tokens[self.pos].span.clone()
    }

    fn previous_span(&self) -> SourceSpan {
        self.tokens[self.pos.saturating_sub(1)].span.clone()
    }

    fn expect(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            self.syntax_error(format!("expected {tok}, found {}", self.peek()));
            false
        }
    }

    fn expect_word(&mut self, word: &str) -> bool {
        if self.eat_word(word) {
            true
        } else {
            self.syntax_error(format!("expected `{word}`, found {}", self.peek()));
            false
        }
    }

    fn eat_word(&mut self, word: &str) -> bool {
        if matches!(self.peek(), Tok::Ident(w) if w == word) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_ident(&mut self, what: &str) -> Option<String> {
        match self.peek().clone() {
            Tok::Ident(word) => {
                self.bump();
                Some(word)
            }
            other => {
                self.syntax_error(format!("expected {what}, found {other}"));
                None
            }
        }
    }

    fn expect_string(&mut self, what: &str) -> Option<String> {
        match self.peek().clone() {
            Tok::Str(text) => {
                self.bump();
                Some(text)
            }
            other => {
                self.syntax_error(format!("expected {what} (a quoted string), found {other}"));
                None
            }
        }
    }

    fn expect_number(&mut self, what: &str) -> Option<Decimal> {
        match self.peek().clone() {
            Tok::Number(n) => {
                self.bump();
                Some(n)
            }
            other => {
                self.syntax_error(format!("expected {what}, found {other}"));
                None
            }
        }
    }

    fn syntax_error(&mut self, text: impl Into<String>) {
        self.diags.push(Diagnostic::error(
            Code::SyntaxError,
            Location::Span(self.current_span()),
            text,
        ));
    }

    /// For word sets checked after the token was consumed; the offending
    /// token is the previous one.
    fn syntax_error_at_previous(&mut self, text: impl Into<String>) {
        self.diags.push(Diagnostic::error(
            Code::SyntaxError,
            Location::Span(self.previous_span()),
            text,
        ));
    }

    fn semantic_duplicate(&mut self, kind: &str, name: &str, span: SourceSpan) {
        self.diags.push(Diagnostic::error(
            Code::DuplicateName,
            Location::Span(span),
            format!("{kind} `{name}` is declared more than once"),
        ));
    }

    /// Skips to just past the next `;`, stopping before `}` or EOF.
    fn recover_past_semi(&mut self) {
        loop {
            match self.peek() {
                Tok::Semi => {
                    self.bump();
                    return;
                }
                Tok::RBrace | Tok::Eof => return,
                _ => self.bump(),
            }
        }
    }

    /// Skips to the next top-level `system`/`interaction` keyword or EOF.
    fn recover_to_top_level(&mut self) {
        loop {
            match self.peek() {
                Tok::Eof => return,
                Tok::Ident(w) if w == "system" || w == "interaction" => return,
                _ => self.bump(),
            }
        }
    }
}
