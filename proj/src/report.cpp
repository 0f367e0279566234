#include "projkit/report.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <json.hpp>

namespace projkit {

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Pass:
        return "pass";
    case Verdict::Fail:
        return "fail";
    case Verdict::PaperInconsistent:
        return "paper-inconsistent";
    case Verdict::Recorded:
        return "recorded";
    }
    return "fail";
}

bool Report::ok() const
{
    return std::none_of(checks.begin(), checks.end(), [](const Check &c) { return c.verdict == Verdict::Fail; });
}

Check residual_check(std::string name, const Jet2 &residual, std::string detail)
{
    Check c{std::move(name), Verdict::Pass, {}, std::move(detail)};
    if (const auto lead = residual.leading_term()) {
        c.verdict = Verdict::Fail;
        c.residual_leading_term = term_to_string(*lead);
    }
    return c;
}

Check bool_check(std::string name, bool holds, std::string detail)
{
    return {std::move(name), holds ? Verdict::Pass : Verdict::Fail, {}, std::move(detail)};
}

std::string to_text(const Report &r)
{
    std::ostringstream os;
    os << "case " << r.case_id << " (order " << r.order << ")";
    if (!r.params.empty()) {
        os << " with";
        for (const auto &[name, value] : r.params) {
            os << ' ' << name << '=' << to_string(value);
        }
    }
    os << '\n';
    for (const auto &c : r.checks) {
        std::string tag = to_string(c.verdict);
        std::transform(tag.begin(), tag.end(), tag.begin(), [](unsigned char ch) { return std::toupper(ch); });
        os << "  " << tag << "  " << c.name;
        if (!c.residual_leading_term.empty()) {
            os << "  [leading term " << c.residual_leading_term << "]";
        }
        if (!c.detail.empty()) {
            os << "  (" << c.detail << ")";
        }
        os << '\n';
    }
    return os.str();
}

std::string to_text(const std::vector<Report> &reports)
{
    std::string out;
    std::size_t failed = 0;
    for (const auto &r : reports) {
        out += to_text(r);
        failed += r.ok() ? 0 : 1;
    }
    out += std::to_string(reports.size()) + " reports, " + std::to_string(failed) + " with failures\n";
    return out;
}

std::string to_json(const std::vector<Report> &reports, const std::string &timestamp)
{
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto &r : reports) {
        nlohmann::ordered_json obj;
        obj["case"] = r.case_id;
        nlohmann::ordered_json params = nlohmann::ordered_json::object();
        for (const auto &[name, value] : r.params) {
            params[name] = to_string(value);
        }
        obj["params"] = params;
        obj["order"] = r.order;
        nlohmann::ordered_json checks = nlohmann::ordered_json::array();
        for (const auto &c : r.checks) {
            nlohmann::ordered_json item;
            item["name"] = c.name;
            item["verdict"] = to_string(c.verdict);
            if (c.residual_leading_term.empty()) {
                item["residual_leading_term"] = nullptr;
            } else {
                item["residual_leading_term"] = c.residual_leading_term;
            }
            item["detail"] = c.detail;
            checks.push_back(item);
        }
        obj["checks"] = checks;
        if (!timestamp.empty()) {
            obj["generated_at"] = timestamp;
        }
        doc.push_back(obj);
    }
    return doc.dump(2) + "\n";
}

} // namespace projkit
