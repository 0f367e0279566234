#include "projkit/input.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>

#include "projkit/error.hpp"

namespace projkit {

namespace {

using boost::property_tree::ptree;

std::string trim_quotes(std::string s)
{
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
        return s.substr(1, s.size() - 2);
    }
    return s;
}

// Parses the expression and checks its parameters against the bound ones.
std::string checked_expression(const std::string &where, const std::string &raw, const ParamEnv &params)
{
    const std::string text = trim_quotes(raw);
    ExprPtr e;
    try {
        e = parse(text);
    } catch (const SyntaxError &err) {
        throw Error(ErrorKind::SyntaxError, where + ": " + err.what());
    }
    for (const auto &name : parameters(*e)) {
        if (params.count(name) == 0) {
            throw Error(ErrorKind::UnboundParameter, where + ": parameter '" + name + "' is not bound in [params]");
        }
    }
    return text;
}

void check_keys(const std::string &section, const ptree &t, const std::set<std::string> &allowed)
{
    for (const auto &[key, _] : t) {
        if (allowed.count(key) == 0) {
            throw Error(ErrorKind::SyntaxError, "[" + section + "]: unknown key '" + key + "'");
        }
    }
}

std::array<std::string, 4> read_quadruple(const std::string &section, const ptree &t,
                                          const std::array<const char *, 4> &keys, bool required,
                                          const ParamEnv &params)
{
    check_keys(section, t, {keys.begin(), keys.end()});
    std::array<std::string, 4> out;
    for (std::size_t k = 0; k < 4; ++k) {
        const auto value = t.get_optional<std::string>(keys[k]);
        if (!value && required) {
            throw Error(ErrorKind::SyntaxError, "[" + section + "]: missing key '" + keys[k] + "'");
        }
        out[k] = checked_expression("[" + section + "] " + keys[k], value.value_or("0"), params);
    }
    return out;
}

} // namespace

ProjectiveStructure InputDocument::structure_at(int n) const
{
    if (!structure) {
        throw Error(ErrorKind::PreconditionViolated, "the input has no [structure] section");
    }
    const auto &s = *structure;
    return {expand(s[0], params, n), expand(s[1], params, n), expand(s[2], params, n), expand(s[3], params, n)};
}

VectorField InputDocument::field_at(const std::string &name, int n) const
{
    for (const auto &[fname, comps] : fields) {
        if (fname == name) {
            return {expand(comps[0], params, n), expand(comps[1], params, n)};
        }
    }
    throw Error(ErrorKind::PreconditionViolated, "the input has no [field " + name + "] section");
}

Pencil InputDocument::pencil_at(int n) const
{
    if (!pencil) {
        throw Error(ErrorKind::PreconditionViolated, "the input has no [pencil] section");
    }
    const auto &p = *pencil;
    return Pencil(Foliation(expand(p[0], params, n), expand(p[1], params, n)),
                  Foliation(expand(p[2], params, n), expand(p[3], params, n)));
}

InputDocument parse_input(std::string_view text)
{
    ptree tree;
    std::istringstream in{std::string(text)};
    try {
        boost::property_tree::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error &e) {
        throw Error(ErrorKind::SyntaxError, "line " + std::to_string(e.line()) + ": " + e.message());
    }

    InputDocument doc;
    // [params] first, since expressions elsewhere refer to it.
    if (const auto params = tree.get_child_optional("params")) {
        for (const auto &[name, value] : *params) {
            doc.params[name] = parse_rational(trim_quotes(value.data()));
        }
    }
    for (const auto &[key, node] : tree) {
        if (key == "params") {
            continue;
        }
        if (key == "order") {
            try {
                doc.order = std::stoi(node.data());
            } catch (const std::exception &) {
                throw Error(ErrorKind::SyntaxError, "order must be an integer");
            }
            if (doc.order < 1) {
                throw Error(ErrorKind::SyntaxError, "order must be positive");
            }
        } else if (key == "structure") {
            doc.structure = read_quadruple(key, node, {"A", "B", "C", "D"}, false, doc.params);
        } else if (key == "pencil") {
            doc.pencil = read_quadruple(key, node, {"P0", "Q0", "Pinf", "Qinf"}, true, doc.params);
        } else if (key.rfind("field ", 0) == 0 && key.size() > 6) {
            check_keys(key, node, {"a", "b"});
            const std::string name = key.substr(6);
            doc.fields.push_back({name,
                                  {checked_expression("[" + key + "] a", node.get<std::string>("a", "0"), doc.params),
                                   checked_expression("[" + key + "] b", node.get<std::string>("b", "0"), doc.params)}});
        } else {
            throw Error(ErrorKind::SyntaxError, "unknown section [" + key + "]");
        }
    }
    return doc;
}

InputDocument load_input(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::PreconditionViolated, "cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_input(buf.str());
}

} // namespace projkit
