#include "lagsum/series_file.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace lagsum {

namespace {

using json = nlohmann::json;

// DOM builder that stores floating-point literals as their source text.
class DecimalPreservingSax {
public:
    explicit DecimalPreservingSax(json& root) : dom_(root, true) {}

    bool null() { return dom_.null(); }
    bool boolean(bool v) { return dom_.boolean(v); }
    bool number_integer(json::number_integer_t v) { return dom_.number_integer(v); }
    bool number_unsigned(json::number_unsigned_t v) { return dom_.number_unsigned(v); }
    bool number_float(json::number_float_t, const json::string_t& text)
    {
        json::string_t copy = text;
        return dom_.string(copy);
    }
    bool string(json::string_t& v) { return dom_.string(v); }
    bool binary(json::binary_t& v) { return dom_.binary(v); }
    bool start_object(std::size_t n) { return dom_.start_object(n); }
    bool key(json::string_t& k) { return dom_.key(k); }
    bool end_object() { return dom_.end_object(); }
    bool start_array(std::size_t n) { return dom_.start_array(n); }
    bool end_array() { return dom_.end_array(); }
    bool parse_error(std::size_t pos, const std::string& token, const nlohmann::detail::exception& ex)
    {
        return dom_.parse_error(pos, token, ex);
    }

private:
    nlohmann::detail::json_sax_dom_parser<json> dom_;
};

std::string number_text(const json& v, const std::string& what)
{
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_number_integer() || v.is_number_unsigned())
        return v.dump();
    throw input_error(what + " must be a number");
}

} // namespace

SeriesFile parse_series_file(std::string_view text)
{
    json root;
    DecimalPreservingSax sax(root);
    try {
        json::sax_parse(text, &sax);
    } catch (const json::exception& e) {
        throw input_error(std::string("malformed JSON: ") + e.what());
    }
    if (!root.is_object())
        throw input_error("series file must be a JSON object");

    SeriesFile file;
    if (!root.contains("alpha"))
        throw input_error("series file needs \"alpha\"");
    file.alpha = number_text(root["alpha"], "alpha");

    const bool has_coeffs = root.contains("coefficients");
    const bool has_family = root.contains("family");
    if (has_coeffs == has_family)
        throw input_error("series file needs exactly one of \"coefficients\" and \"family\"");

    if (has_family) {
        if (!root["family"].is_string())
            throw input_error("\"family\" must be a string");
        file.family = root["family"].get<std::string>();
        if (root.contains("params")) {
            const json& params = root["params"];
            if (!params.is_object())
                throw input_error("\"params\" must be an object");
            for (const auto& [key, value] : params.items()) {
                auto& slot = file.params[key];
                if (value.is_array())
                    for (const auto& v : value)
                        slot.push_back(number_text(v, "parameter '" + key + "'"));
                else
                    slot.push_back(number_text(value, "parameter '" + key + "'"));
            }
        }
        return file;
    }

    const json& coeffs = root["coefficients"];
    if (!coeffs.is_array() || coeffs.empty())
        throw input_error("\"coefficients\" must be a nonempty array");
    for (const auto& v : coeffs)
        file.coefficients.push_back(number_text(v, "coefficient"));
    file.zero_tail = file.coefficients.size() < LaguerreSeries<double>::min_explicit;
    if (root.contains("tail")) {
        const json& tail = root["tail"];
        if (tail == "zero")
            file.zero_tail = true;
        else if (tail == "strict")
            file.zero_tail = false;
        else
            throw input_error("\"tail\" must be \"zero\" or \"strict\"");
    }
    return file;
}

SeriesFile load_series_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw input_error("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_series_file(buf.str());
}

} // namespace lagsum
