#include "immcalc/matrix.hpp"

#include <cctype>
#include <stdexcept>
#include <utility>

namespace immcalc {

Mat Mat::identity(int n) {
	Mat m(n, n);
	for (int i = 0; i < n; ++i) m.at(i, i) = 1;
	return m;
}

Mat Mat::transposed() const {
	Mat t(cols, rows);
	for (int r = 0; r < rows; ++r)
		for (int c = 0; c < cols; ++c) t.at(c, r) = at(r, c);
	return t;
}

Mat operator*(const Mat& lhs, const Mat& rhs) {
	if (lhs.cols != rhs.rows) throw std::invalid_argument("matrix product: shape mismatch");
	Mat out(lhs.rows, rhs.cols);
	for (int i = 0; i < lhs.rows; ++i)
		for (int k = 0; k < lhs.cols; ++k) {
			const Int& l = lhs.at(i, k);
			if (l == 0) continue;
			for (int j = 0; j < rhs.cols; ++j) out.at(i, j) += l * rhs.at(k, j);
		}
	return out;
}

Int det(Mat m) {
	if (m.rows != m.cols) throw std::invalid_argument("det: matrix not square");
	const int n = m.rows;
	if (n == 0) return 1;
	Int prev = 1;
	int sign = 1;
	for (int k = 0; k < n - 1; ++k) {
		if (m.at(k, k) == 0) {
			int p = -1;
			for (int r = k + 1; r < n; ++r)
				if (m.at(r, k) != 0) {
					p = r;
					break;
				}
			if (p < 0) return 0;
			for (int c = k; c < n; ++c) std::swap(m.at(k, c), m.at(p, c));
			sign = -sign;
		}
		for (int i = k + 1; i < n; ++i)
			for (int j = k + 1; j < n; ++j) {
				Int t = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
				mpz_divexact(m.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
			}
		prev = m.at(k, k);
	}
	return sign > 0 ? m.at(n - 1, n - 1) : Int(-m.at(n - 1, n - 1));
}

Mat inverse_unimodular(const Mat& m) {
	if (m.rows != m.cols) throw std::invalid_argument("inverse: matrix not square");
	const int n = m.rows;
	Int d = det(m);
	if (d != 1 && d != -1) throw std::invalid_argument("inverse_unimodular: |det| != 1");
	// Adjugate via (n-1)x(n-1) minors; n stays small here.
	Mat inv(n, n);
	for (int r = 0; r < n; ++r)
		for (int c = 0; c < n; ++c) {
			Mat minor(n - 1, n - 1);
			for (int i = 0, mi = 0; i < n; ++i) {
				if (i == r) continue;
				for (int j = 0, mj = 0; j < n; ++j) {
					if (j == c) continue;
					minor.at(mi, mj) = m.at(i, j);
					++mj;
				}
				++mi;
			}
			Int cof = det(minor);
			if ((r + c) % 2 != 0) cof = -cof;
			inv.at(c, r) = d > 0 ? cof : Int(-cof);
		}
	return inv;
}

namespace {

// Reduces every entry in row t (resp. column t) beyond the pivot by row/column
// operations until the pivot divides its whole row and column.
void snf_improve_pivot(Mat& m, int t) {
	const int rows = m.rows, cols = m.cols;
	for (;;) {
		// Move a nonzero entry of smallest absolute value in the working block to (t,t).
		int br = -1, bc = -1;
		Int best;
		for (int i = t; i < rows; ++i)
			for (int j = t; j < cols; ++j) {
				if (m.at(i, j) == 0) continue;
				Int v = abs(m.at(i, j));
				if (br < 0 || v < best) {
					best = v;
					br = i;
					bc = j;
				}
			}
		if (br < 0) return;  // all zero
		if (br != t)
			for (int j = 0; j < cols; ++j) std::swap(m.at(t, j), m.at(br, j));
		if (bc != t)
			for (int i = 0; i < rows; ++i) std::swap(m.at(i, t), m.at(i, bc));

		bool clean = true;
		for (int i = t + 1; i < rows; ++i) {
			if (m.at(i, t) == 0) continue;
			Int q = m.at(i, t) / m.at(t, t);  // truncated division is fine: remainder shrinks
			if (q != 0)
				for (int j = t; j < cols; ++j) m.at(i, j) -= q * m.at(t, j);
			if (m.at(i, t) != 0) clean = false;
		}
		for (int j = t + 1; j < cols; ++j) {
			if (m.at(t, j) == 0) continue;
			Int q = m.at(t, j) / m.at(t, t);
			if (q != 0)
				for (int i = t; i < rows; ++i) m.at(i, j) -= q * m.at(i, t);
			if (m.at(t, j) != 0) clean = false;
		}
		if (!clean) continue;

		// Pivot row/column clean; ensure pivot divides the rest of the block.
		bool divides = true;
		for (int i = t + 1; i < rows && divides; ++i)
			for (int j = t + 1; j < cols && divides; ++j)
				if (m.at(i, j) % m.at(t, t) != 0) {
					for (int c = t; c < cols; ++c) m.at(t, c) += m.at(i, c);
					divides = false;
				}
		if (divides) return;
	}
}

}  // namespace

std::vector<Int> smith_normal_form(Mat m) {
	const int k = std::min(m.rows, m.cols);
	std::vector<Int> d(static_cast<size_t>(k));
	for (int t = 0; t < k; ++t) {
		snf_improve_pivot(m, t);
		d[t] = abs(m.at(t, t));
	}
	return d;
}

namespace {

struct LiteralReader {
	std::string_view s;
	size_t pos = 0;

	void skip_ws() {
		while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
	}
	bool eat(char c) {
		skip_ws();
		if (pos < s.size() && s[pos] == c) {
			++pos;
			return true;
		}
		return false;
	}
	void expect(char c) {
		if (!eat(c))
			throw std::invalid_argument(std::string("matrix literal: expected '") + c + "' at offset " +
			                            std::to_string(pos));
	}
	Int integer() {
		skip_ws();
		size_t start = pos;
		if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
		while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
		if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
			throw std::invalid_argument("matrix literal: expected integer at offset " + std::to_string(start));
		return Int(std::string(s.substr(start, pos - start)));
	}
};

}  // namespace

Mat parse_matrix_literal(std::string_view text) {
	LiteralReader r{text};
	r.expect('[');
	std::vector<std::vector<Int>> rows;
	r.skip_ws();
	if (!r.eat(']')) {
		do {
			r.expect('[');
			std::vector<Int> row;
			if (!r.eat(']')) {
				do row.push_back(r.integer());
				while (r.eat(','));
				r.expect(']');
			}
			rows.push_back(std::move(row));
		} while (r.eat(','));
		r.expect(']');
	}
	r.skip_ws();
	if (r.pos != text.size()) throw std::invalid_argument("matrix literal: trailing characters");
	if (rows.empty()) return Mat();
	const size_t cols = rows[0].size();
	for (const auto& row : rows)
		if (row.size() != cols) throw std::invalid_argument("matrix literal: ragged rows");
	if (cols == 0) throw std::invalid_argument("matrix literal: empty rows");
	Mat m(static_cast<int>(rows.size()), static_cast<int>(cols));
	for (size_t i = 0; i < rows.size(); ++i)
		for (size_t j = 0; j < cols; ++j) m.at(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
	return m;
}

std::string to_literal(const Mat& m) {
	std::string out = "[";
	for (int r = 0; r < m.rows; ++r) {
		if (r) out += ',';
		out += '[';
		for (int c = 0; c < m.cols; ++c) {
			if (c) out += ',';
			out += m.at(r, c).get_str();
		}
		out += ']';
	}
	out += ']';
	return out;
}

}  // namespace immcalc
