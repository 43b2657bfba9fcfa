#include "lmpipe/module.hpp"

#include "lmpipe/error.hpp"

namespace lmpipe {

Prediction Prediction::from_completions(std::vector<FieldMap> completions,
                                        std::vector<std::string> warnings) {
    if (completions.empty()) throw Error("prediction requires at least one completion");
    Prediction prediction;
    prediction.outputs = completions.front();
    prediction.completions = std::move(completions);
    prediction.warnings = std::move(warnings);
    return prediction;
}

Prediction Prediction::single(FieldMap outputs) {
    Prediction prediction;
    prediction.completions.push_back(outputs);
    prediction.outputs = std::move(outputs);
    return prediction;
}

void Prediction::attach(const std::string& name, const std::string& value) {
    outputs.set(name, value);
    for (auto& sample : completions) sample.set(name, value);
}

ExecutionContext ExecutionContext::inference(std::shared_ptr<Lm> lm,
                                             std::shared_ptr<Retriever> retriever) {
    return ExecutionContext(false, std::move(lm), std::move(retriever));
}

ExecutionContext ExecutionContext::compile(std::shared_ptr<Lm> lm,
                                           std::shared_ptr<Retriever> retriever) {
    return ExecutionContext(true, std::move(lm), std::move(retriever));
}

void ExecutionContext::append_trace(TraceRecord record) {
    std::lock_guard<std::mutex> lock(mutex_);
    trace_.push_back(std::move(record));
}

std::vector<TraceRecord> ExecutionContext::trace_snapshot() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return trace_;
}

std::size_t ExecutionContext::trace_size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return trace_.size();
}

void Module::register_module(std::string name, std::shared_ptr<Module> submodule) {
    submodules_.emplace_back(std::move(name), std::move(submodule));
}

namespace {

std::string join_path(const std::string& prefix, const std::string& name) {
    return prefix.empty() ? name : prefix + "." + name;
}

template <typename ModuleT, typename PredictT>
void walk_predictors(ModuleT& module, const std::string& prefix,
                     std::vector<std::pair<std::string, PredictT*>>& out, bool assign_paths) {
    if (auto* predict = dynamic_cast<PredictT*>(&module)) {
        out.emplace_back(prefix, predict);
        if constexpr (!std::is_const_v<PredictT>) {
            if (assign_paths) predict->set_path(prefix);
        }
        return;
    }
    for (const auto& [name, sub] : module.submodules()) {
        walk_predictors(*sub, join_path(prefix, name), out, assign_paths);
    }
}

} // namespace

std::vector<std::pair<std::string, Predict*>> Module::named_predictors() {
    std::vector<std::pair<std::string, Predict*>> out;
    walk_predictors<Module, Predict>(*this, "", out, true);
    return out;
}

std::vector<std::pair<std::string, const Predict*>> Module::named_predictors() const {
    std::vector<std::pair<std::string, const Predict*>> out;
    walk_predictors<const Module, const Predict>(*this, "", out, false);
    return out;
}

std::shared_ptr<Module> Module::deep_copy() const {
    auto copy = fresh_clone();
    const auto source = named_predictors();
    const auto target = copy->named_predictors();
    if (source.size() != target.size()) {
        throw StructureError("fresh_clone produced a different predictor structure");
    }
    for (std::size_t i = 0; i < source.size(); ++i) {
        if (source[i].first != target[i].first) {
            throw StructureError("fresh_clone changed predictor path '" + source[i].first +
                                 "' to '" + target[i].first + "'");
        }
        target[i].second->state() = source[i].second->state();
    }
    return copy;
}

std::shared_ptr<Module> Module::reset_copy() const {
    auto copy = deep_copy();
    for (auto& [path, predictor] : copy->named_predictors()) {
        predictor->state().demonstrations.clear();
    }
    return copy;
}

Predict::Predict(Signature signature, GenerationConfig config)
    : state_{std::move(signature), nullptr, {}, std::move(config)} {
    state_.config.validate();
}

Prediction Predict::forward(ExecutionContext& context, const FieldMap& inputs) {
    const auto& lm = state_.lm_override ? state_.lm_override : context.default_lm();
    if (!lm) {
        throw Error("no LM configured (predictor '" + path_ + "' has no override and the context has no default)");
    }

    const RenderedPrompt rendered =
        format_prompt(state_.signature, state_.demonstrations, inputs);
    const LMResponse response = lm->generate(rendered.text, state_.config);

    std::vector<FieldMap> completions;
    std::vector<std::string> warnings = rendered.warnings;
    completions.reserve(response.completions.size());
    for (const auto& raw : response.completions) {
        // Per-sample parse failures degrade per-sample, never aborting the batch.
        ParsedCompletion parsed = parse_completion(state_.signature, raw);
        completions.push_back(std::move(parsed.outputs));
        warnings.insert(warnings.end(), parsed.warnings.begin(), parsed.warnings.end());
    }

    Prediction prediction = Prediction::from_completions(std::move(completions), std::move(warnings));
    if (context.compiling()) {
        context.append_trace(TraceRecord{this, path_, inputs, prediction});
    }
    return prediction;
}

std::shared_ptr<Module> Predict::fresh_clone() const {
    return std::make_shared<Predict>(state_.signature, state_.config);
}

} // namespace lmpipe
