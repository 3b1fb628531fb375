#include <algorithm>
#include <cctype>
#include <set>

#include <jetvar/parser.hpp>

namespace jetvar
{

namespace
{

const std::set<std::string, std::less<>> reserved{"theta", "dx", "dy", "base", "fields"};

bool ident_start(char c)
{
    return std::isalpha(static_cast<unsigned char>(c)) != 0;
}

bool ident_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

class Parser
{
public:
    Parser(const JetSpec &spec, const std::map<std::string, Form> &bindings, std::string_view text, std::size_t pos,
           std::size_t line)
        : spec_(spec), bindings_(bindings), text_(text), pos_(pos), line_(line)
    {
    }

    Form parse_all()
    {
        skip();
        if (at_end()) {
            fail("expected an expression", pos_);
        }
        Form f = expr();
        skip();
        if (!at_end()) {
            fail(std::string("unexpected '") + text_[pos_] + "'", pos_);
        }
        return f;
    }

private:
    [[noreturn]] void fail(const std::string &what, std::size_t column) const { throw parse_error(what, line_, column); }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    void skip()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) {
            ++pos_;
        }
    }

    bool accept(char c)
    {
        skip();
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        skip();
        if (peek() != c) {
            fail(std::string("expected '") + c + "'", pos_);
        }
        ++pos_;
    }

    Form combine(Form a, const Form &b, bool subtract, std::size_t at)
    {
        try {
            return subtract ? a - b : a + b;
        } catch (const dimension_error &) {
            fail("terms of different form degree", at);
        }
    }

    Form expr()
    {
        Form acc = term();
        while (true) {
            skip();
            const std::size_t at = pos_;
            if (accept('+')) {
                acc = combine(std::move(acc), term(), false, at);
            } else if (accept('-')) {
                acc = combine(std::move(acc), term(), true, at);
            } else {
                return acc;
            }
        }
    }

    Form term()
    {
        Form acc = signed_factor();
        while (accept('*')) {
            acc = wedge(acc, signed_factor());
        }
        return acc;
    }

    Form signed_factor()
    {
        if (accept('-')) {
            return -signed_factor();
        }
        return factor();
    }

    Form factor()
    {
        Form acc = atom();
        while (true) {
            skip();
            const std::size_t caret = pos_;
            if (!accept('^')) {
                return acc;
            }
            skip();
            if (std::isdigit(static_cast<unsigned char>(peek())) != 0) {
                const std::size_t at = pos_;
                const std::string digits = read_digits();
                if (acc.degree() != 0) {
                    fail("power of a form of positive degree", caret);
                }
                if (digits.size() > 6) {
                    fail("exponent too large", at);
                }
                acc = Form(pow(acc.coefficient({}), static_cast<std::uint32_t>(std::stoul(digits))));
            } else if (ident_start(peek()) || peek() == '(') {
                acc = wedge(acc, atom());
            } else {
                fail("dangling '^'", caret);
            }
        }
    }

    std::string read_digits()
    {
        const std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek())) != 0) {
            ++pos_;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    std::string read_ident()
    {
        skip();
        if (!ident_start(peek())) {
            fail("expected an identifier", pos_);
        }
        const std::size_t start = pos_;
        while (ident_char(peek())) {
            ++pos_;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    std::size_t base_index(const std::string &name, std::size_t at) const
    {
        const auto &names = spec_.base_names();
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) {
            fail("unknown base variable '" + name + "'", at);
        }
        return static_cast<std::size_t>(it - names.begin());
    }

    std::size_t field_index(const std::string &name, std::size_t at) const
    {
        const auto &names = spec_.field_names();
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) {
            fail("unknown field '" + name + "'", at);
        }
        return static_cast<std::size_t>(it - names.begin());
    }

    // ident (',' ident)* as a multi-index over the base variables.
    MultiIndex subscript_list()
    {
        std::vector<std::uint32_t> p(spec_.n(), 0);
        do {
            skip();
            const std::size_t at = pos_;
            if (!ident_start(peek())) {
                fail("malformed derivative subscript", at);
            }
            ++p[base_index(read_ident(), at)];
        } while (accept(','));
        return MultiIndex(std::move(p));
    }

    Form atom()
    {
        skip();
        const std::size_t at = pos_;
        const char c = peek();
        if (c == '(') {
            ++pos_;
            Form inner = expr();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
            mpz_class num(read_digits());
            skip();
            if (peek() == '/') {
                ++pos_;
                skip();
                if (std::isdigit(static_cast<unsigned char>(peek())) == 0) {
                    fail("expected a denominator", pos_);
                }
                const std::size_t den_at = pos_;
                mpz_class den(read_digits());
                if (den == 0) {
                    fail("zero denominator", den_at);
                }
                Rational q(num, den);
                q.canonicalize();
                return Form(Expr(q));
            }
            return Form(Expr(Rational(num)));
        }
        if (!ident_start(c)) {
            if (at_end()) {
                fail("unexpected end of input", at);
            }
            fail(std::string("unexpected '") + c + "'", at);
        }
        const std::string name = read_ident();
        if (name == "dx" || name == "theta" || name == "dy") {
            return keyword(name, at);
        }
        if (peek() == '_') {
            ++pos_;
            const std::size_t field = field_index(name, at);
            if (peek() != '{') {
                fail("malformed derivative subscript", pos_);
            }
            ++pos_;
            MultiIndex p = subscript_list();
            expect('}');
            return Form(Expr::field(field, std::move(p)));
        }
        const auto &bases = spec_.base_names();
        if (auto it = std::find(bases.begin(), bases.end(), name); it != bases.end()) {
            return Form(Expr::base(static_cast<std::size_t>(it - bases.begin())));
        }
        const auto &fields = spec_.field_names();
        if (auto it = std::find(fields.begin(), fields.end(), name); it != fields.end()) {
            return Form(Expr::field(static_cast<std::size_t>(it - fields.begin()), MultiIndex(spec_.n())));
        }
        if (auto it = bindings_.find(name); it != bindings_.end()) {
            return it->second;
        }
        fail("unknown identifier '" + name + "'", at);
    }

    Form keyword(const std::string &name, std::size_t at)
    {
        expect('(');
        skip();
        const std::size_t arg_at = pos_;
        const std::string arg = read_ident();
        if (name == "dx") {
            const std::size_t dir = base_index(arg, arg_at);
            expect(')');
            return Form::dx(dir);
        }
        const std::size_t field = field_index(arg, arg_at);
        MultiIndex p(spec_.n());
        if (accept(';')) {
            p = subscript_list();
        }
        expect(')');
        (void)at;
        return name == "theta" ? Form::theta(field, std::move(p)) : from_holonomic(spec_, field, p);
    }

    const JetSpec &spec_;
    const std::map<std::string, Form> &bindings_;
    std::string_view text_;
    std::size_t pos_;
    std::size_t line_;
};

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())) != 0) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())) != 0) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string> name_list(std::string_view line, std::size_t start, std::size_t line_no)
{
    std::vector<std::string> out;
    std::size_t pos = start;
    while (true) {
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos])) != 0) {
            ++pos;
        }
        if (pos >= line.size() || !ident_start(line[pos])) {
            throw parse_error("expected a name", line_no, pos);
        }
        const std::size_t begin = pos;
        while (pos < line.size() && ident_char(line[pos])) {
            ++pos;
        }
        std::string name(line.substr(begin, pos - begin));
        if (reserved.contains(name) || std::find(out.begin(), out.end(), name) != out.end()) {
            throw parse_error("name '" + name + "' is reserved or repeated", line_no, begin);
        }
        out.push_back(std::move(name));
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos])) != 0) {
            ++pos;
        }
        if (pos >= line.size()) {
            return out;
        }
        if (line[pos] != ',') {
            throw parse_error(std::string("unexpected '") + line[pos] + "'", line_no, pos);
        }
        ++pos;
    }
}

} // namespace

Form parse_form(const JetSpec &spec, std::string_view text, const std::map<std::string, Form> &bindings,
                std::size_t line)
{
    return Parser(spec, bindings, text, 0, line).parse_all();
}

Expr parse_expr(const JetSpec &spec, std::string_view text, const std::map<std::string, Form> &bindings,
                std::size_t line)
{
    const Form f = parse_form(spec, text, bindings, line);
    if (f.degree() != 0) {
        throw parse_error("expected a function, found a form of degree " + std::to_string(f.degree()), line, 0);
    }
    return f.coefficient({});
}

ProblemFile parse_problem(std::string_view text)
{
    std::optional<std::vector<std::string>> base, fields;
    std::optional<JetSpec> spec;
    std::map<std::string, Form> bindings;
    std::optional<Lagrangian> lagrangian;
    std::optional<std::vector<Expr>> source;
    std::set<std::size_t> assigned;
    std::optional<Form> alpha;

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (trim(line).empty()) {
            continue;
        }

        std::size_t pos = 0;
        while (std::isspace(static_cast<unsigned char>(line[pos])) != 0) {
            ++pos;
        }
        const std::size_t key_at = pos;
        while (pos < line.size() && (ident_char(line[pos]) || line[pos] == '_')) {
            ++pos;
        }
        const std::string key(line.substr(key_at, pos - key_at));
        if (key.empty()) {
            throw parse_error("expected a declaration or binding", line_no, key_at);
        }
        if (key == "base" || key == "fields") {
            if (spec) {
                throw parse_error("declarations must precede bindings", line_no, key_at);
            }
            auto &slot = key == "base" ? base : fields;
            if (slot) {
                throw parse_error("duplicate '" + key + "' declaration", line_no, key_at);
            }
            slot = name_list(line, pos, line_no);
            continue;
        }

        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos])) != 0) {
            ++pos;
        }
        if (pos >= line.size() || line[pos] != '=') {
            throw parse_error("expected '='", line_no, pos);
        }
        ++pos;
        if (!spec) {
            if (!base || !fields) {
                throw parse_error("'base' and 'fields' must be declared first", line_no, key_at);
            }
            for (const auto &b : *base) {
                if (std::find(fields->begin(), fields->end(), b) != fields->end()) {
                    throw parse_error("'" + b + "' declared as both base variable and field", line_no, key_at);
                }
            }
            spec.emplace(*base, *fields);
        }
        const Form value = Parser(*spec, bindings, line, pos, line_no).parse_all();
        auto require_function = [&](const std::string &what) {
            if (value.degree() != 0) {
                throw parse_error(what + " must be a function", line_no, pos);
            }
            return value.coefficient({});
        };

        if (key == "L") {
            if (lagrangian) {
                throw parse_error("duplicate Lagrangian", line_no, key_at);
            }
            lagrangian = Lagrangian{*spec, require_function("a Lagrangian density")};
        } else if (key.starts_with("E_")) {
            const std::string label = key.substr(2);
            std::size_t index = spec->m();
            const auto &names = spec->field_names();
            if (auto it = std::find(names.begin(), names.end(), label); it != names.end()) {
                index = static_cast<std::size_t>(it - names.begin());
            } else if (!label.empty() && std::all_of(label.begin(), label.end(), ::isdigit) && label.size() < 6) {
                const auto k = std::stoul(label);
                index = k >= 1 ? k - 1 : spec->m();
            }
            if (index >= spec->m()) {
                throw parse_error("no field matches '" + key + "'", line_no, key_at);
            }
            if (!source) {
                source.emplace(spec->m());
            }
            if (!assigned.insert(index).second) {
                throw parse_error("duplicate source component", line_no, key_at);
            }
            (*source)[index] = require_function("a source component");
        } else if (key == "alpha") {
            if (alpha) {
                throw parse_error("duplicate 'alpha'", line_no, key_at);
            }
            alpha = value;
        } else {
            if (key.find('_') != std::string::npos || reserved.contains(key)) {
                throw parse_error("invalid binding name '" + key + "'", line_no, key_at);
            }
            const auto &b = spec->base_names();
            const auto &f = spec->field_names();
            if (std::find(b.begin(), b.end(), key) != b.end() || std::find(f.begin(), f.end(), key) != f.end()
                || bindings.contains(key)) {
                throw parse_error("name '" + key + "' already in use", line_no, key_at);
            }
            bindings.emplace(key, value);
        }
    }

    if (!spec) {
        if (!base || !fields) {
            throw parse_error("'base' and 'fields' must be declared", line_no, 0);
        }
        spec.emplace(*base, *fields);
    }
    ProblemFile out{*spec, std::move(bindings), std::move(lagrangian), std::nullopt, std::move(alpha)};
    if (source) {
        out.source = SourceForm(*spec, std::move(*source));
    }
    return out;
}

} // namespace jetvar
