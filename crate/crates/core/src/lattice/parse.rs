use super::{convex_hull, LatticePoint, LatticePolygon};
use crate::error::{Error, Result};

/// Parse one polygon line, `poly: (x1,y1) (x2,y2) ...`. The `poly:` prefix is
/// optional. The result is the convex hull of the listed points.
pub fn parse_polygon(line: &str) -> Result<LatticePolygon> {
    let points = parse_points(line)?;
    if points.is_empty() {
        return Err(Error::parse(1, "polygon has no points"));
    }
    Ok(convex_hull(&points))
}

/// Parse every non-blank, non-comment (`#`) line of a polygon file.
pub fn parse_polygon_lines(text: &str) -> Result<Vec<LatticePolygon>> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        out.push(parse_polygon(line).map_err(|e| e.at_line(idx + 1))?);
    }
    Ok(out)
}

fn parse_points(line: &str) -> Result<Vec<LatticePoint>> {
    let mut cur = Cursor::new(line);
    cur.skip_ws();
    if cur.rest().starts_with("poly:") {
        cur.advance(5);
    }
    let mut points = Vec::new();
    loop {
        cur.skip_ws();
        match cur.peek() {
            None => break,
            Some('(') => {
                cur.advance(1);
                let x = cur.integer()?;
                cur.skip_ws();
                cur.expect(',')?;
                let y = cur.integer()?;
                cur.skip_ws();
                cur.expect(')')?;
                points.push(LatticePoint::new(x, y));
            }
            Some(c) => return Err(Error::parse(cur.column(), format!("expected '(' but found '{c}'"))),
        }
    }
    Ok(points)
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn advance(&mut self, n: usize) {
        self.pos += n;
    }

    fn column(&self) -> usize {
        self.src[..self.pos].chars().count() + 1
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.advance(c.len_utf8());
        }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.advance(1);
                Ok(())
            }
            Some(c) => Err(Error::parse(self.column(), format!("expected '{want}' but found '{c}'"))),
            None => Err(Error::parse(self.column(), format!("expected '{want}' but reached end of line"))),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let col = self.column();
        if matches!(self.peek(), Some('-') | Some('+')) {
            self.advance(1);
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.advance(1);
        }
        self.src[start..self.pos]
            .parse::<i64>()
            .map_err(|_| Error::parse(col, "expected a signed integer"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_triangle_with_vertex_list() {
        let poly = parse_polygon("poly: (0,1) (7,0) (2,4)").unwrap();
        assert_eq!(poly.lattice_point_count(), 14);
        let bare = parse_polygon("  (0, 1)   (7,0) ( 2 , 4 ) ").unwrap();
        assert_eq!(poly, bare);
    }

    #[test]
    fn negative_coordinates() {
        let poly = parse_polygon("poly: (-1,-1) (1,0) (0,1)").unwrap();
        assert_eq!(poly, LatticePolygon::upsilon());
    }

    #[test]
    fn reports_column() {
        match parse_polygon("poly: (0,1) (7;0)") {
            Err(Error::Parse { line, column, .. }) => {
                assert_eq!(line, 1);
                assert_eq!(column, 15);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn reports_line_in_files() {
        let text = "# comment\npoly: (0,0) (1,0) (0,1)\n\npoly: (0,0) x\n";
        match parse_polygon_lines(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }
        let ok = parse_polygon_lines("poly: (0,0) (1,0) (0,1)\npoly: (0,0) (2,0) (0,2)").unwrap();
        assert_eq!(ok.len(), 2);
    }

    #[test]
    fn empty_polygon_is_an_error() {
        assert!(parse_polygon("poly:").is_err());
    }
}
