use serde_json::{json, Map, Value};

/// Result values in display order; rendered either as aligned text or JSON.
#[derive(Clone, Debug, PartialEq)]
pub enum Node {
    Text(String),
    Bool(bool),
    Int(i64),
    List(Vec<Node>),
    Record(Fields),
}

pub type Fields = Vec<(String, Node)>;

impl Node {
    pub fn text(s: impl Into<String>) -> Node {
        Node::Text(s.into())
    }

    pub fn texts<I: IntoIterator<Item = S>, S: Into<String>>(items: I) -> Node {
        Node::List(items.into_iter().map(|s| Node::Text(s.into())).collect())
    }

    pub fn count(n: usize) -> Node {
        Node::Int(n as i64)
    }

    fn is_scalar(&self) -> bool {
        matches!(self, Node::Text(_) | Node::Bool(_) | Node::Int(_))
    }

    pub fn to_json(&self) -> Value {
        match self {
            Node::Text(s) => json!(s),
            Node::Bool(b) => json!(b),
            Node::Int(i) => json!(i),
            Node::List(v) => Value::Array(v.iter().map(Node::to_json).collect()),
            Node::Record(f) => record_json(f),
        }
    }
}

pub fn record_json(fields: &Fields) -> Value {
    let mut m = Map::new();
    for (k, v) in fields {
        m.insert(k.clone(), v.to_json());
    }
    Value::Object(m)
}

fn scalar(n: &Node) -> String {
    match n {
        Node::Text(s) => s.clone(),
        Node::Bool(b) => b.to_string(),
        Node::Int(i) => i.to_string(),
        _ => unreachable!("not a scalar"),
    }
}

/// Renders fields as `key  value` lines with keys padded to a common width.
pub fn render_text(fields: &Fields, indent: usize, out: &mut String) {
    let width = fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let pad = " ".repeat(indent);
    for (k, v) in fields {
        match v {
            n if n.is_scalar() => out.push_str(&format!("{pad}{k:width$}  {}\n", scalar(n))),
            Node::List(items) if items.iter().all(Node::is_scalar) => {
                let body = if items.is_empty() {
                    "none".to_string()
                } else {
                    items.iter().map(scalar).collect::<Vec<_>>().join(", ")
                };
                out.push_str(&format!("{pad}{k:width$}  {body}\n"));
            }
            Node::List(items) => {
                out.push_str(&format!("{pad}{k}\n"));
                for item in items {
                    match item {
                        Node::Record(f) => {
                            let mut inner = String::new();
                            render_text(f, indent + 4, &mut inner);
                            let marker = format!("{pad}  - ");
                            out.push_str(&marker);
                            out.push_str(&inner[marker.len().min(inner.len())..]);
                        }
                        other => {
                            let mut inner = String::new();
                            render_text(&vec![(String::new(), other.clone())], 0, &mut inner);
                            out.push_str(&format!("{pad}  - {}", inner.trim_start()));
                        }
                    }
                }
            }
            Node::Record(f) => {
                out.push_str(&format!("{pad}{k}\n"));
                render_text(f, indent + 2, out);
            }
            _ => unreachable!(),
        }
    }
}
