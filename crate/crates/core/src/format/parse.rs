use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::lex::{tokenize, Token};
use super::Document;
use crate::config::Config;
use crate::doctrine::{sub_doctrine, Doctrine, Elem, Fiber};
use crate::error::{Error, Result};
use crate::fincat::{Arrow, FinCat, Obj, Prod, ProductChoice, TableSpec};

struct Cursor {
    toks: Vec<Token>,
    pos: usize,
    eof: Token,
}

impl Cursor {
    fn peek(&self) -> &Token {
        self.toks.get(self.pos).unwrap_or(&self.eof)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn next(&mut self) -> Token {
        let t = self.peek().clone();
        self.pos += 1;
        t
    }

    fn expect(&mut self, p: &str) -> Result<Token> {
        let t = self.next();
        if t.is(p) {
            Ok(t)
        } else {
            Err(t.err(format!("expected `{p}`, found `{}`", t.text)))
        }
    }

    fn word(&mut self) -> Result<Token> {
        let t = self.next();
        if t.punct {
            Err(t.err(format!("expected a name, found `{}`", t.text)))
        } else {
            Ok(t)
        }
    }

    /// Words up to the next `;` (consumed).
    fn words_until_semi(&mut self) -> Result<Vec<Token>> {
        let mut out = Vec::new();
        while !self.peek().is(";") {
            out.push(self.word()?);
        }
        self.next();
        Ok(out)
    }
}

#[derive(Default)]
struct TableBase {
    objects: Vec<String>,
    obj_index: HashMap<String, Obj>,
    /// Declared arrows per hom, after the implicit identity.
    homs: BTreeMap<(Obj, Obj), Vec<String>>,
    arrows: HashMap<String, Arrow>,
    compose: HashMap<(Arrow, Arrow), Arrow>,
    terminal: Option<Obj>,
    products: BTreeMap<(Obj, Obj), Prod>,
}

impl TableBase {
    fn object(&self, t: &Token) -> Result<Obj> {
        self.obj_index.get(&t.text).copied().ok_or_else(|| t.err(format!("unknown object `{}`", t.text)))
    }

    fn arrow(&self, t: &Token) -> Result<Arrow> {
        self.arrows.get(&t.text).copied().ok_or_else(|| t.err(format!("unknown arrow `{}`", t.text)))
    }
}

fn parse_table_base(cur: &mut Cursor) -> Result<FinCat> {
    let mut b = TableBase::default();
    cur.expect("{")?;
    loop {
        let kw = cur.next();
        match kw.text.as_str() {
            "}" => break,
            "objects" => {
                for t in cur.words_until_semi()? {
                    if b.obj_index.contains_key(&t.text) {
                        return Err(t.err(format!("duplicate object `{}`", t.text)));
                    }
                    let o = Obj(b.objects.len() as u32);
                    b.obj_index.insert(t.text.clone(), o);
                    b.objects.push(t.text.clone());
                    let id = format!("id_{}", t.text);
                    b.homs.insert((o, o), vec![id.clone()]);
                    b.arrows.insert(id, Arrow { src: o, tgt: o, idx: 0 });
                }
            }
            "arrow" => {
                let name = cur.word()?;
                let (s, t) = (cur.word()?, cur.word()?);
                cur.expect(";")?;
                let (s, t) = (b.object(&s)?, b.object(&t)?);
                if b.arrows.contains_key(&name.text) {
                    return Err(name.err(format!("duplicate arrow `{}`", name.text)));
                }
                let hom = b.homs.entry((s, t)).or_default();
                b.arrows.insert(name.text.clone(), Arrow { src: s, tgt: t, idx: hom.len() as u64 });
                hom.push(name.text);
            }
            "compose" => {
                let (g, f) = (cur.word()?, cur.word()?);
                cur.expect("=")?;
                let h = cur.word()?;
                cur.expect(";")?;
                let key = (b.arrow(&g)?, b.arrow(&f)?);
                let val = b.arrow(&h)?;
                if b.compose.insert(key, val).is_some() {
                    return Err(g.err(format!("duplicate composite {} {}", g.text, f.text)));
                }
            }
            "terminal" => {
                let t = cur.word()?;
                cur.expect(";")?;
                b.terminal = Some(b.object(&t)?);
            }
            "product" => {
                let (x, y) = (cur.word()?, cur.word()?);
                cur.expect("=")?;
                let (p, p1, p2) = (cur.word()?, cur.word()?, cur.word()?);
                cur.expect(";")?;
                let key = (b.object(&x)?, b.object(&y)?);
                let prod = Prod { obj: b.object(&p)?, pr1: b.arrow(&p1)?, pr2: b.arrow(&p2)? };
                if prod.pr1.src != prod.obj
                    || prod.pr2.src != prod.obj
                    || prod.pr1.tgt != key.0
                    || prod.pr2.tgt != key.1
                {
                    return Err(p1.err(format!("projections do not type as {} × {}", x.text, y.text)));
                }
                b.products.insert(key, prod);
            }
            _ => return Err(kw.err(format!("unexpected `{}` in base", kw.text))),
        }
    }
    let n = b.objects.len();
    let mut homs = BTreeMap::new();
    for a in 0..n as u32 {
        for c in 0..n as u32 {
            homs.insert((Obj(a), Obj(c)), b.homs.get(&(Obj(a), Obj(c))).cloned().unwrap_or_default());
        }
    }
    let products = if b.terminal.is_some() || !b.products.is_empty() {
        Some(ProductChoice { terminal: b.terminal, binary: b.products })
    } else {
        None
    };
    FinCat::from_table(TableSpec { objects: b.objects, homs, identity: vec![0; n], compose: b.compose, products })
}

fn numbers(toks: Vec<Token>) -> Result<Vec<u32>> {
    toks.iter()
        .map(|t| t.text.parse::<u32>().map_err(|_| t.err(format!("expected a set size, found `{}`", t.text))))
        .collect()
}

fn parse_finset_base(cur: &mut Cursor) -> Result<FinCat> {
    cur.expect("{")?;
    let (mut sizes, mut core) = (None, None);
    loop {
        let kw = cur.next();
        match kw.text.as_str() {
            "}" => break,
            "sizes" => sizes = Some(numbers(cur.words_until_semi()?)?),
            "core" => core = Some(numbers(cur.words_until_semi()?)?),
            _ => return Err(kw.err(format!("unexpected `{}` in finset base", kw.text))),
        }
    }
    let sizes = sizes.ok_or_else(|| cur.peek().err("finset base needs `sizes`"))?;
    let core = core.unwrap_or_else(|| sizes.clone());
    FinCat::finite_sets(&sizes, &core)
}

struct FiberDecl {
    at: Token,
    names: Vec<String>,
    pairs: Vec<(usize, usize)>,
    top: Option<Token>,
}

fn parse_fiber(cur: &mut Cursor, at: Token) -> Result<FiberDecl> {
    let mut d = FiberDecl { at, names: Vec::new(), pairs: Vec::new(), top: None };
    cur.expect("{")?;
    loop {
        let kw = cur.next();
        match kw.text.as_str() {
            "}" => break,
            "elements" => {
                for t in cur.words_until_semi()? {
                    if d.names.contains(&t.text) {
                        return Err(t.err(format!("duplicate element `{}`", t.text)));
                    }
                    d.names.push(t.text);
                }
            }
            "leq" => {
                let (x, y) = (cur.word()?, cur.word()?);
                cur.expect(";")?;
                let find = |t: &Token| {
                    d.names
                        .iter()
                        .position(|n| *n == t.text)
                        .ok_or_else(|| t.err(format!("unknown element `{}`", t.text)))
                };
                d.pairs.push((find(&x)?, find(&y)?));
            }
            "top" => {
                let t = cur.word()?;
                cur.expect(";")?;
                if !d.names.contains(&t.text) {
                    return Err(t.err(format!("unknown element `{}`", t.text)));
                }
                d.top = Some(t);
            }
            _ => return Err(kw.err(format!("unexpected `{}` in fiber", kw.text))),
        }
    }
    Ok(d)
}

/// Parses a document; see the format description in the repository docs.
pub fn parse(text: &str, cfg: &Config) -> Result<Document> {
    let toks = tokenize(text)?;
    let eof = toks.last().map(|t| Token { text: String::new(), line: t.line, col: t.col + t.text.len(), punct: true });
    let mut cur =
        Cursor { toks, pos: 0, eof: eof.unwrap_or(Token { text: String::new(), line: 1, col: 1, punct: true }) };
    cur.expect("base")?;
    let mut base = if cur.peek().is("finset") {
        cur.next();
        parse_finset_base(&mut cur)?
    } else {
        parse_table_base(&mut cur)?
    };
    let mut fibers: Vec<FiberDecl> = Vec::new();
    let mut reindex: Vec<(Token, Vec<(Token, Token)>)> = Vec::new();
    let mut subobjects = false;
    while !cur.at_end() {
        let kw = cur.next();
        match kw.text.as_str() {
            "fiber" => {
                let at = cur.word()?;
                fibers.push(parse_fiber(&mut cur, at)?);
            }
            "reindex" => {
                let f = cur.word()?;
                cur.expect("{")?;
                let mut entries = Vec::new();
                while !cur.peek().is("}") {
                    let x = cur.word()?;
                    cur.expect("->")?;
                    let y = cur.word()?;
                    cur.expect(";")?;
                    entries.push((x, y));
                }
                cur.next();
                reindex.push((f, entries));
            }
            "core" => {
                cur.expect("{")?;
                let mut objs = Vec::new();
                while !cur.peek().is("}") {
                    let t = cur.word()?;
                    objs.push(base.object(&t.text).ok_or_else(|| t.err(format!("unknown object `{}`", t.text)))?);
                }
                cur.next();
                let window = base.is_window();
                base = base.with_core(objs, window);
            }
            "subobjects" => {
                cur.expect(";")?;
                subobjects = true;
            }
            _ => return Err(kw.err(format!("unexpected `{}`", kw.text))),
        }
    }
    let base = base.with_hom_cap(cfg.cap_enum);
    if subobjects {
        if let Some(d) = fibers.first() {
            return Err(d.at.err("`subobjects` cannot be combined with explicit fibers"));
        }
        let d = sub_doctrine(&base, cfg.cap_fibers)?;
        return Ok(Document { base, doctrine: Some(Arc::new(d)) });
    }
    if fibers.is_empty() && reindex.is_empty() {
        return Ok(Document { base, doctrine: None });
    }
    if !base.is_table() {
        return Err(Error::MalformedPresentation("explicit fibers need a table base".into()));
    }
    let mut by_obj: Vec<Option<Fiber>> = vec![None; base.num_objects()];
    for d in fibers {
        let o = base.object(&d.at.text).ok_or_else(|| d.at.err(format!("unknown object `{}`", d.at.text)))?;
        if by_obj[o.index()].is_some() {
            return Err(d.at.err(format!("duplicate fiber for `{}`", d.at.text)));
        }
        if d.names.len() > cfg.cap_fibers {
            return Err(Error::cap(format!("fiber over {}", d.at.text), cfg.cap_fibers as u64));
        }
        let fiber = Fiber::from_pairs(d.names, &d.pairs)?;
        if let Some(t) = &d.top {
            if fiber.find(&t.text) != Some(fiber.top()) {
                return Err(Error::violation("Top", format!("declared top {} is not the greatest element", t.text)));
            }
        }
        by_obj[o.index()] = Some(fiber);
    }
    let fibers: Vec<Fiber> = by_obj
        .into_iter()
        .enumerate()
        .map(|(i, f)| f.ok_or_else(|| Error::MissingEntry(format!("fiber over {}", base.name(Obj(i as u32))))))
        .collect::<Result<_>>()?;
    let mut maps = HashMap::new();
    for (ft, entries) in reindex {
        let f = base.find_arrow(&ft.text).ok_or_else(|| ft.err(format!("unknown arrow `{}`", ft.text)))?;
        let (src, tgt) = (&fibers[f.src.index()], &fibers[f.tgt.index()]);
        let mut map = vec![None; tgt.len()];
        for (x, y) in entries {
            let xe = tgt.find(&x.text).ok_or_else(|| x.err(format!("`{}` is not in the target fiber", x.text)))?;
            let ye = src.find(&y.text).ok_or_else(|| y.err(format!("`{}` is not in the source fiber", y.text)))?;
            if map[xe.index()].replace(ye).is_some() {
                return Err(x.err(format!("`{}` mapped twice", x.text)));
            }
        }
        let map: Vec<Elem> = map
            .into_iter()
            .enumerate()
            .map(|(i, y)| {
                y.ok_or_else(|| ft.err(format!("reindexing along {} misses {}", ft.text, tgt.name(Elem(i as u32)))))
            })
            .collect::<Result<_>>()?;
        if base.is_identity(f) {
            if map.iter().enumerate().any(|(i, e)| e.index() != i) {
                return Err(Error::violation("IdentityReindex", ft.text));
            }
            continue;
        }
        if maps.insert(f, map).is_some() {
            return Err(ft.err(format!("duplicate reindexing for `{}`", ft.text)));
        }
    }
    let d = Doctrine::from_tables(base.clone(), fibers, maps)?;
    Ok(Document { base, doctrine: Some(Arc::new(d)) })
}
