#include "ealab/problem.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>
#include <variant>
#include <vector>

namespace ealab {

namespace {

// ---------------------------------------------------------------------------
// Tokenizer. Whitespace (including newlines) separates tokens; `#` comments
// run to end of line. Values never depend on line structure, so the grammar
// below treats the file as a flat token stream; line numbers are kept for
// error messages only.
// ---------------------------------------------------------------------------

struct Token {
    enum Kind { Punct, Number, String, Word, End } kind = End;
    char punct = 0;
    double num = 0.0;
    std::string text;
    int line = 0;
};

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ParseError("problem file, line " + std::to_string(line) + ": " + msg);
}

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    int line = 1;
    size_t i = 0;
    const size_t n = text.size();
    while (i < n) {
        const char c = text[i];
        if (c == '\n') {
            ++line, ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '#') {
            while (i < n && text[i] != '\n') ++i;
            continue;
        }
        if (c == '[' || c == ']' || c == '{' || c == '}' || c == '=' || c == ',') {
            out.push_back({Token::Punct, c, 0.0, {}, line});
            ++i;
            continue;
        }
        if (c == '"') {
            std::string s;
            ++i;
            while (i < n && text[i] != '"') {
                if (text[i] == '\n') fail(line, "unterminated string");
                if (text[i] == '\\' && i + 1 < n) {
                    const char e = text[i + 1];
                    s += (e == 'n') ? '\n' : (e == 't') ? '\t' : e;
                    i += 2;
                } else {
                    s += text[i++];
                }
            }
            if (i >= n) fail(line, "unterminated string");
            ++i;  // closing quote
            out.push_back({Token::String, 0, 0.0, s, line});
            continue;
        }
        // Bare word: maximal run of non-space, non-punctuation characters.
        size_t j = i;
        while (j < n) {
            const char d = text[j];
            if (std::isspace(static_cast<unsigned char>(d)) || d == '[' || d == ']' ||
                d == '{' || d == '}' || d == '=' || d == ',' || d == '#' || d == '"')
                break;
            ++j;
        }
        std::string word = text.substr(i, j - i);
        double value = 0.0;
        const char* b = word.data();
        const char* e = b + word.size();
        auto [ptr, ec] = std::from_chars(b, e, value);
        if (ec == std::errc() && ptr == e)
            out.push_back({Token::Number, 0, value, word, line});
        else
            out.push_back({Token::Word, 0, 0.0, word, line});
        i = j;
    }
    out.push_back({Token::End, 0, 0.0, {}, line});
    return out;
}

// ---------------------------------------------------------------------------
// Grammar:
//   file       := (section | assignment)*
//   section    := '[' word ']'            -- selects the table assigned into
//   assignment := key '=' value
//   value      := number | string | array | inline-table
//   array      := '[' (value (',' value)* ','?)? ']'
//   table      := '{' (assignment (',' assignment)* ','?)? '}'
// ---------------------------------------------------------------------------

struct Value;
using Array = std::vector<Value>;
using Table = std::vector<std::pair<std::string, Value>>;

struct Value {
    int line = 0;
    std::variant<double, std::string, Array, Table> v;
};

class Parser {
  public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    // Top level: returns the named tables ("algebra", "metric", ...).
    Table parse_file() {
        Table top;
        while (peek().kind != Token::End) {
            if (is_punct('[')) {
                next();
                const Token& name = next();
                if (name.kind != Token::Word)
                    fail(name.line, "expected a section name after '['");
                expect_punct(']');
                Table section;
                while (peek().kind == Token::Word) section.push_back(parse_assignment());
                top.push_back({name.text, Value{name.line, std::move(section)}});
            } else if (peek().kind == Token::Word) {
                top.push_back(parse_assignment());
            } else {
                fail(peek().line, "expected a section header or 'key = value'");
            }
        }
        return top;
    }

  private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    bool is_punct(char c) const {
        return peek().kind == Token::Punct && peek().punct == c;
    }
    void expect_punct(char c) {
        if (!is_punct(c))
            fail(peek().line, std::string("expected '") + c + "'");
        next();
    }

    std::pair<std::string, Value> parse_assignment() {
        const Token& key = next();
        if (key.kind != Token::Word) fail(key.line, "expected a key");
        expect_punct('=');
        return {key.text, parse_value()};
    }

    Value parse_value() {
        const Token& t = peek();
        switch (t.kind) {
            case Token::Number:
                next();
                return {t.line, t.num};
            case Token::String:
                next();
                return {t.line, t.text};
            case Token::Punct:
                if (t.punct == '[') {
                    next();
                    Array a;
                    while (!is_punct(']')) {
                        a.push_back(parse_value());
                        if (is_punct(','))
                            next();
                        else
                            break;
                    }
                    expect_punct(']');
                    return {t.line, std::move(a)};
                }
                if (t.punct == '{') {
                    next();
                    Table tab;
                    while (peek().kind == Token::Word) {
                        tab.push_back(parse_assignment());
                        if (is_punct(','))
                            next();
                        else
                            break;
                    }
                    expect_punct('}');
                    return {t.line, std::move(tab)};
                }
                [[fallthrough]];
            default:
                fail(t.line, "expected a value (number, string, array, or table)");
        }
    }

    std::vector<Token> toks_;
    size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Extraction into ProblemSpec.
// ---------------------------------------------------------------------------

double as_number(const Value& v, const std::string& key) {
    if (const double* d = std::get_if<double>(&v.v)) return *d;
    fail(v.line, "key '" + key + "' must be a number");
}

std::string as_string(const Value& v, const std::string& key) {
    if (const std::string* s = std::get_if<std::string>(&v.v)) return *s;
    fail(v.line, "key '" + key + "' must be a quoted string");
}

const Array& as_array(const Value& v, const std::string& key) {
    if (const Array* a = std::get_if<Array>(&v.v)) return *a;
    fail(v.line, "key '" + key + "' must be an array");
}

const Table& as_table(const Value& v, const std::string& key) {
    if (const Table* t = std::get_if<Table>(&v.v)) return *t;
    fail(v.line, "'" + key + "' must be a table ([" + key + "] section or " + key +
                     " = { ... })");
}

Mat3 as_matrix3(const Value& v, const std::string& key) {
    const Array& rows = as_array(v, key);
    if (rows.size() != 3) fail(v.line, "'" + key + "' must have 3 rows");
    Mat3 m;
    for (int i = 0; i < 3; ++i) {
        const Array& row = as_array(rows[i], key);
        if (row.size() != 3) fail(rows[i].line, "'" + key + "' rows must have 3 entries");
        for (int j = 0; j < 3; ++j) m(i, j) = as_number(row[j], key);
    }
    return m;
}

StructureTensor as_tensor(const Value& v) {
    const Array& outer = as_array(v, "custom");
    if (outer.size() != 3) fail(v.line, "'custom' must be a 3x3x3 nested array [k][i][j]");
    StructureTensor c{};
    for (int k = 0; k < 3; ++k) {
        const Array& mid = as_array(outer[k], "custom");
        if (mid.size() != 3) fail(outer[k].line, "'custom' must be a 3x3x3 nested array");
        for (int i = 0; i < 3; ++i) {
            const Array& inner = as_array(mid[i], "custom");
            if (inner.size() != 3)
                fail(mid[i].line, "'custom' must be a 3x3x3 nested array");
            for (int j = 0; j < 3; ++j) c[k][i][j] = as_number(inner[j], "custom");
        }
    }
    return c;
}

void extract_algebra(const Table& tab, int line, ProblemSpec& out) {
    for (const auto& [key, val] : tab) {
        if (key == "family")
            out.family = as_string(val, key);
        else if (key == "lambda")
            out.lambda = as_number(val, key);
        else if (key == "mu")
            out.mu = as_number(val, key);
        else if (key == "custom")
            out.custom = as_tensor(val);
        else
            fail(val.line, "unknown algebra key '" + key + "'");
    }
    if (out.family && out.custom)
        fail(line, "algebra: 'family' and 'custom' are mutually exclusive");
    if (!out.family && !out.custom)
        fail(line, "algebra: needs 'family' or 'custom'");
}

void extract_metric(const Table& tab, int line, ProblemSpec& out) {
    for (const auto& [key, val] : tab) {
        if (key == "matrix")
            out.matrix = as_matrix3(val, key);
        else if (key == "normal_form") {
            const std::string name = as_string(val, key);
            const std::optional<Tag> tag = tag_from_string(name);
            if (!tag) fail(val.line, "unknown normal form '" + name + "'");
            out.normal_form = *tag;
        } else if (key == "param")
            out.param = as_number(val, key);
        else
            fail(val.line, "unknown metric key '" + key + "'");
    }
    if (out.matrix && out.normal_form)
        fail(line, "metric: 'matrix' and 'normal_form' are mutually exclusive");
    if (!out.matrix && !out.normal_form)
        fail(line, "metric: needs 'matrix' or 'normal_form'");
    if (out.matrix && out.param)
        fail(line, "metric: 'param' only applies to 'normal_form'");
}

}  // namespace

ProblemSpec parse_problem(const std::string& text) {
    Parser parser(tokenize(text));
    const Table top = parser.parse_file();
    ProblemSpec spec;
    bool saw_algebra = false, saw_metric = false;
    for (const auto& [key, val] : top) {
        if (key == "algebra") {
            if (saw_algebra) fail(val.line, "duplicate 'algebra' block");
            saw_algebra = true;
            extract_algebra(as_table(val, key), val.line, spec);
        } else if (key == "metric") {
            if (saw_metric) fail(val.line, "duplicate 'metric' block");
            saw_metric = true;
            extract_metric(as_table(val, key), val.line, spec);
        } else {
            fail(val.line, "unknown top-level key '" + key +
                               "' (expected 'algebra' or 'metric')");
        }
    }
    return spec;
}

ProblemSpec load_problem(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open problem file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem(buf.str());
}

LieAlgebra3 build_algebra(const ProblemSpec& p) {
    if (p.custom) {
        if (p.lambda || p.mu)
            throw ParseError("algebra: 'lambda'/'mu' do not apply to 'custom'");
        return make_lie_algebra(*p.custom);
    }
    if (!p.family) throw ParseError("problem file has no algebra block");
    const std::string& f = *p.family;
    if (f == "h") {
        if (!p.lambda) throw ParseError("algebra: family \"h\" requires 'lambda'");
        if (p.mu) throw ParseError("algebra: family \"h\" does not take 'mu'");
        return standard_family(FamilyId::h(*p.lambda));
    }
    if (f == "psh") {
        if (p.lambda || p.mu)
            throw ParseError("algebra: family \"psh\" takes no parameter");
        return standard_family(FamilyId::psh());
    }
    if (f == "e") {
        if (!p.mu) throw ParseError("algebra: family \"e\" requires 'mu'");
        if (p.lambda) throw ParseError("algebra: family \"e\" does not take 'lambda'");
        return standard_family(FamilyId::e(*p.mu));
    }
    throw ParseError("algebra: unknown family \"" + f + "\" (expected h, psh, or e)");
}

BilinearForm build_metric(const ProblemSpec& p) {
    if (p.matrix) return BilinearForm(*p.matrix);
    if (!p.normal_form) throw ParseError("problem file has no metric block");
    return BilinearForm(canonical_matrix(*p.normal_form, p.param));
}

}  // namespace ealab
