//! Character canvas shared by the ASCII renderers.

pub(crate) struct Canvas {
    rows: Vec<Vec<char>>,
}

impl Canvas {
    pub fn new(height: usize, width: usize) -> Self {
        Canvas {
            rows: vec![vec![' '; width]; height],
        }
    }

    /// Writes a character; later writes win, blanks never overwrite.
    pub fn set(&mut self, r: usize, c: usize, ch: char) {
        if ch != ' ' {
            self.rows[r][c] = ch;
        }
    }

    /// Vertical line of '|' between the two rows inclusive.
    pub fn vline(&mut self, r0: usize, r1: usize, c: usize) {
        for r in r0.min(r1)..=r0.max(r1) {
            self.set(r, c, '|');
        }
    }

    /// Horizontal hook: '+' at both ends, '-' between.
    pub fn hook(&mut self, r: usize, c0: usize, c1: usize) {
        let (c0, c1) = (c0.min(c1), c0.max(c1));
        self.set(r, c0, '+');
        self.set(r, c1, '+');
        for c in c0 + 1..c1 {
            if self.rows[r][c] == ' ' {
                self.rows[r][c] = '-';
            }
        }
    }

    pub fn to_string(&self) -> String {
        let mut s = String::new();
        for row in &self.rows {
            let line: String = row.iter().collect();
            s.push_str(line.trim_end());
            s.push('\n');
        }
        s
    }
}
