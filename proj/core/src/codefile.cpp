#include "cdc/codefile.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "cdc/errors.hpp"
#include "cdc/matrix.hpp"

namespace cdc {

namespace {

void append_rows(std::string& out, const Mat& m) {
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) out.push_back(static_cast<char>('0' + m.at(r, c)));
    out.push_back('\n');
  }
}

void check_q_fits(int q) {
  if (q > 9)
    throw std::invalid_argument("code files encode one digit per character; q must be <= 9");
}

struct LineReader {
  std::istringstream in;
  long line_no = 0;

  explicit LineReader(const std::string& text) : in(text) {}

  // Next line, skipping blank ones; nullopt at end of input.
  std::optional<std::string> next_content_line() {
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return line;
    }
    return std::nullopt;
  }
};

Mat parse_word(LineReader& reader, const FieldContext& f, int rows, int cols, size_t word_idx) {
  Mat m(f, rows, cols);
  for (int r = 0; r < rows; ++r) {
    std::optional<std::string> line = reader.next_content_line();
    if (!line)
      throw ParseError("file ends inside word " + std::to_string(word_idx), reader.line_no);
    if (static_cast<int>(line->size()) != cols)
      throw ParseError("expected " + std::to_string(cols) + " digits, found " +
                           std::to_string(line->size()),
                       reader.line_no);
    for (int c = 0; c < cols; ++c) {
      const char ch = (*line)[c];
      if (ch < '0' || ch >= '0' + f.q())
        throw ParseError(std::string("entry '") + ch + "' is not a digit below " +
                             std::to_string(f.q()),
                         reader.line_no);
      m.set(r, c, static_cast<uint8_t>(ch - '0'));
    }
  }
  return m;
}

template <typename T>
void reject_duplicates(std::vector<T> sorted_copy, const char* what) {
  std::sort(sorted_copy.begin(), sorted_copy.end());
  auto it = std::adjacent_find(sorted_copy.begin(), sorted_copy.end());
  if (it != sorted_copy.end()) throw ParseError(std::string("duplicate ") + what);
}

}  // namespace

std::string to_code_file(const CDCCode& code) {
  check_q_fits(code.q());
  std::string out = "CDC " + std::to_string(code.q()) + " " + std::to_string(code.v()) + " " +
                    std::to_string(code.k()) + " " + std::to_string(code.words().size()) + " " +
                    std::to_string(code.d_claimed()) + "\n";
  bool first = true;
  for (const Subspace& w : code.words()) {
    if (!first) out.push_back('\n');
    first = false;
    append_rows(out, w.basis());
  }
  return out;
}

std::string to_code_file(const RankCode& code) {
  check_q_fits(code.q());
  const int u = code.u_claimed().value_or(std::min(code.a(), code.b()));
  std::string out = "RMC " + std::to_string(code.q()) + " " + std::to_string(code.a()) + " " +
                    std::to_string(code.b()) + " " + std::to_string(code.words().size()) + " " +
                    std::to_string(code.d_claimed()) + " " + std::to_string(u) + "\n";
  bool first = true;
  for (const Mat& w : code.words()) {
    if (!first) out.push_back('\n');
    first = false;
    append_rows(out, w);
  }
  return out;
}

std::string to_code_file(const AnyCode& code) {
  return std::visit([](const auto& c) { return to_code_file(c); }, code);
}

AnyCode parse_code_file(const std::string& text, uint64_t max_words) {
  LineReader reader(text);
  std::optional<std::string> header = reader.next_content_line();
  if (!header) throw ParseError("empty file", 1);

  std::istringstream hs(*header);
  std::string tag;
  hs >> tag;
  const bool is_cdc = tag == "CDC";
  if (!is_cdc && tag != "RMC")
    throw ParseError("header must start with CDC or RMC, found '" + tag + "'", reader.line_no);

  long long q = 0, rows = 0, cols = 0, n = 0, d = 0, u = 0;
  if (is_cdc) {
    long long v = 0, k = 0;
    if (!(hs >> q >> v >> k >> n >> d))
      throw ParseError("CDC header needs five integers: q v k N d", reader.line_no);
    rows = k;
    cols = v;
  } else {
    long long a = 0, b = 0;
    if (!(hs >> q >> a >> b >> n >> d >> u))
      throw ParseError("RMC header needs six integers: q a b N d u", reader.line_no);
    rows = a;
    cols = b;
  }
  std::string extra;
  if (hs >> extra) throw ParseError("unexpected token '" + extra + "' in header", reader.line_no);
  if (q < 2 || q > 9) throw ParseError("q must be between 2 and 9", reader.line_no);
  if (rows < 0 || cols < 0 || n < 0 || d < 0 || (is_cdc && rows > cols))
    throw ParseError("header parameters out of range", reader.line_no);
  if (static_cast<uint64_t>(n) > max_words)
    throw BudgetError("reading " + std::to_string(n) + " words", max_words);

  const FieldContext* f = nullptr;
  try {
    f = &FieldContext::get(static_cast<int>(q));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), reader.line_no);
  }

  if (is_cdc) {
    std::vector<Subspace> words;
    words.reserve(static_cast<size_t>(n));
    for (long long i = 0; i < n; ++i) {
      Mat m = parse_word(reader, *f, static_cast<int>(rows), static_cast<int>(cols),
                         static_cast<size_t>(i));
      const long at_line = reader.line_no;
      if (rank(m) != rows)
        throw ParseError("word " + std::to_string(i) + ": rows are linearly dependent", at_line);
      words.push_back(Subspace::from_full_rank(m));
    }
    if (reader.next_content_line())
      throw ParseError("unexpected content after last word", reader.line_no);
    reject_duplicates(words, "canonical basis");
    return CDCCode(static_cast<int>(q), static_cast<int>(cols), static_cast<int>(rows),
                   static_cast<int>(d), std::move(words));
  }

  std::vector<Mat> words;
  words.reserve(static_cast<size_t>(n));
  for (long long i = 0; i < n; ++i)
    words.push_back(parse_word(reader, *f, static_cast<int>(rows), static_cast<int>(cols),
                               static_cast<size_t>(i)));
  if (reader.next_content_line())
    throw ParseError("unexpected content after last word", reader.line_no);
  reject_duplicates(words, "codeword");
  return RankCode(static_cast<int>(q), static_cast<int>(rows), static_cast<int>(cols),
                  static_cast<int>(d), static_cast<int>(u), std::move(words));
}

void write_code_file(const std::string& path, const AnyCode& code) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  const std::string text = to_code_file(code);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

AnyCode read_code_file(const std::string& path, uint64_t max_words) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_code_file(buf.str(), max_words);
}

}  // namespace cdc
