#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tcfbm/cli/cli.hpp"
#include "tcfbm/error.hpp"

namespace tcfbm::cli {

namespace {

std::string scalar_to_string(const nlohmann::json& v) {
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_number_integer() || v.is_number_unsigned() || v.is_boolean()) {
        return v.dump();
    }
    if (v.is_number_float()) {
        std::ostringstream os;
        os.precision(17);
        os << v.get<double>();
        return os.str();
    }
    throw ParameterError("unsupported config value " + v.dump());
}

std::vector<std::string> config_flags(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file " + path);
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError("config file " + path + " is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) {
        throw ParameterError("config file must hold a JSON object");
    }
    std::vector<std::string> flags;
    for (const auto& [key, value] : doc.items()) {
        if (key == "config") {
            throw ParameterError("config files cannot include other config files");
        }
        std::string flag = key;
        std::replace(flag.begin(), flag.end(), '_', '-');  // delta_r and delta-r both work
        flags.push_back("--" + flag);
        if (value.is_array()) {
            std::string joined;
            for (const auto& item : value) {
                joined += (joined.empty() ? "" : ",") + scalar_to_string(item);
            }
            flags.push_back(joined);
        } else {
            flags.push_back(scalar_to_string(value));
        }
    }
    return flags;
}

}  // namespace

std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::vector<std::string> rest;
    std::vector<std::string> from_file;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a == "--config") {
            if (i + 1 >= args.size()) {
                throw ParameterError("--config needs a path");
            }
            from_file = config_flags(args[++i]);
        } else if (a.rfind("--config=", 0) == 0) {
            from_file = config_flags(a.substr(9));
        } else {
            rest.push_back(a);
        }
    }
    if (from_file.empty() || rest.empty()) {
        return rest;
    }
    std::vector<std::string> out;
    out.push_back(rest.front());
    out.insert(out.end(), from_file.begin(), from_file.end());
    out.insert(out.end(), rest.begin() + 1, rest.end());
    return out;
}

}  // namespace tcfbm::cli
