use super::{HeaderBlock, PageGeometry, Row};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Page {
    /// 1-based for body pages; the preface is page 0.
    pub number: u32,
    pub rows: Vec<Row>,
    pub header: Option<HeaderBlock>,
}

/// Fills pages greedily with `geom.text_rows` rows each. A page never ends
/// on the first row of a definition while more rows follow: that row moves
/// to the next page so the definition opens with at least one row of its
/// body.
pub fn paginate(rows: Vec<Row>, geom: &PageGeometry) -> Vec<Page> {
    let capacity = geom.text_rows.max(1);
    let mut pages = Vec::new();
    let mut rest = rows.into_iter().peekable();
    let mut buffer: Vec<Row> = Vec::with_capacity(capacity);
    loop {
        while buffer.len() < capacity {
            match rest.next() {
                Some(r) => buffer.push(r),
                None => break,
            }
        }
        if buffer.is_empty() {
            break;
        }
        let more = rest.peek().is_some();
        let mut keep = buffer.len();
        if more {
            while keep > 1 && buffer[keep - 1].starts_definition {
                keep -= 1;
            }
            if buffer[keep - 1].starts_definition {
                // A page made of nothing but definition openers; keep it full.
                keep = buffer.len();
            }
        }
        let carry = buffer.split_off(keep);
        pages.push(Page { number: pages.len() as u32 + 1, rows: std::mem::replace(&mut buffer, carry), header: None });
    }
    pages
}
