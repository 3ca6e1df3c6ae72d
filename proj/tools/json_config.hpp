#pragma once

#include <istream>
#include <iterator>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace busfactor::cli {

/// Reads `--config` files as a JSON object keyed by long option names. Flat keys
/// apply to the selected subcommand; objects named after a subcommand address it
/// explicitly. Flags on the command line take precedence.
class JsonConfig : public CLI::Config {
public:
    explicit JsonConfig(const CLI::App* root) : root_(root) {}

    std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
        nlohmann::json out = nlohmann::json::object();
        for (const CLI::Option* opt : app->get_options()) {
            if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
            const std::string name = opt->get_lnames().front();
            if (opt->count() > 0) {
                out[name] = opt->results().size() == 1 ? nlohmann::json(opt->results().front())
                                                       : nlohmann::json(opt->results());
            } else if (default_also && !opt->get_default_str().empty()) {
                out[name] = opt->get_default_str();
            }
        }
        return out.dump(2) + "\n";
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        const std::string text{std::istreambuf_iterator<char>(input), std::istreambuf_iterator<char>()};
        nlohmann::json root;
        try {
            root = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw CLI::ConversionError(std::string("invalid JSON config: ") + e.what());
        }
        if (!root.is_object()) throw CLI::ConversionError(std::string("JSON config must be an object"));
        std::vector<CLI::ConfigItem> items;
        std::vector<std::string> active;
        if (!root_->get_subcommands().empty()) active.push_back(root_->get_subcommands().front()->get_name());
        for (const auto& [key, value] : root.items()) {
            if (value.is_object() && root_->get_subcommand_no_throw(key) != nullptr)
                collect(value, {key}, items);
            else
                collect(nlohmann::json{{key, value}}, active, items);
        }
        return items;
    }

private:
    const CLI::App* root_;

    static std::string scalar(const nlohmann::json& value) {
        if (value.is_string()) return value.get<std::string>();
        if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
        return value.dump();
    }

    static void collect(const nlohmann::json& object, const std::vector<std::string>& parents,
                        std::vector<CLI::ConfigItem>& items) {
        for (const auto& [key, value] : object.items()) {
            if (value.is_object()) {
                auto nested = parents;
                nested.push_back(key);
                collect(value, nested, items);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = key;
            if (value.is_array()) {
                for (const auto& v : value) item.inputs.push_back(scalar(v));
            } else {
                item.inputs.push_back(scalar(value));
            }
            items.push_back(std::move(item));
        }
    }
};

}  // namespace busfactor::cli
