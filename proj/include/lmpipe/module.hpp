#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "lmpipe/field_map.hpp"
#include "lmpipe/lm_backend.hpp"
#include "lmpipe/prompt_format.hpp"
#include "lmpipe/signature.hpp"

namespace lmpipe {

class Retriever;
class Predict;

// One LM transformation result: the parsed output fields of the first sample,
// plus every sample's fields for modules that compare completions.
struct Prediction {
    FieldMap outputs;                     // == completions.front()
    std::vector<FieldMap> completions;    // one per generated sample
    std::vector<std::string> warnings;    // parse warnings, truncation flags

    const std::string& get(std::string_view name) const { return outputs.get(name); }
    bool has(std::string_view name) const { return outputs.has(name); }

    static Prediction from_completions(std::vector<FieldMap> completions,
                                       std::vector<std::string> warnings = {});
    static Prediction single(FieldMap outputs);

    // Adds a field to the primary outputs and every sample (used by programs
    // that attach context passages to their result).
    void attach(const std::string& name, const std::string& value);
};

// One predictor invocation captured during compile-mode execution.
struct TraceRecord {
    const Predict* predictor = nullptr;   // identity within the executing program
    std::string predictor_path;           // dotted path from the last predictor walk
    FieldMap inputs;
    Prediction outputs;
};

// Per-execution state: the default LM/retriever plus, in compile mode, an
// append-only trace. Contexts are scoped to one execution; concurrent runs
// with separate contexts never see each other's traces.
class ExecutionContext {
public:
    static ExecutionContext inference(std::shared_ptr<Lm> lm,
                                      std::shared_ptr<Retriever> retriever = nullptr);
    static ExecutionContext compile(std::shared_ptr<Lm> lm,
                                    std::shared_ptr<Retriever> retriever = nullptr);

    bool compiling() const { return compiling_; }
    void append_trace(TraceRecord record);
    std::vector<TraceRecord> trace_snapshot() const;
    std::size_t trace_size() const;

    const std::shared_ptr<Lm>& default_lm() const { return lm_; }
    const std::shared_ptr<Retriever>& default_retriever() const { return retriever_; }

private:
    ExecutionContext(bool compiling, std::shared_ptr<Lm> lm, std::shared_ptr<Retriever> retriever)
        : compiling_(compiling), lm_(std::move(lm)), retriever_(std::move(retriever)) {}

    bool compiling_ = false;
    std::shared_ptr<Lm> lm_;
    std::shared_ptr<Retriever> retriever_;
    mutable std::mutex mutex_;
    std::vector<TraceRecord> trace_;
};

// A composable pipeline component. Sub-modules are registered at construction
// so programs can be walked, copied, and optimized without reflection.
class Module {
public:
    virtual ~Module() = default;
    Module(const Module&) = delete;
    Module& operator=(const Module&) = delete;

    virtual Prediction forward(ExecutionContext& context, const FieldMap& inputs) = 0;

    // Structural clone: same module tree and configuration, no learned state.
    virtual std::shared_ptr<Module> fresh_clone() const = 0;

    // Duplicates the program including every predictor's demonstrations and
    // config; the copy shares no mutable state with the original.
    std::shared_ptr<Module> deep_copy() const;
    // Deep copy with every predictor's demonstration list cleared.
    std::shared_ptr<Module> reset_copy() const;

    // Deterministic depth-first walk over registered sub-modules; paths are
    // dotted attribute names. The non-const form records each predictor's path
    // for trace records.
    std::vector<std::pair<std::string, Predict*>> named_predictors();
    std::vector<std::pair<std::string, const Predict*>> named_predictors() const;

    const std::vector<std::pair<std::string, std::shared_ptr<Module>>>& submodules() const {
        return submodules_;
    }

protected:
    Module() = default;
    void register_module(std::string name, std::shared_ptr<Module> submodule);

private:
    std::vector<std::pair<std::string, std::shared_ptr<Module>>> submodules_;
};

// A Predict node's learnable parameters.
struct PredictorState {
    Signature signature;
    std::shared_ptr<Lm> lm_override;       // null -> use the context default
    std::vector<Example> demonstrations;   // list order is the prompt order
    GenerationConfig config;
};

// The parameterized leaf that calls an LM: renders the signature with its
// demonstrations, generates, parses each sample, and (in compile mode) traces
// the call.
class Predict final : public Module {
public:
    explicit Predict(Signature signature, GenerationConfig config = {});

    Prediction forward(ExecutionContext& context, const FieldMap& inputs) override;
    std::shared_ptr<Module> fresh_clone() const override;

    const PredictorState& state() const { return state_; }
    PredictorState& state() { return state_; }
    const Signature& signature() const { return state_.signature; }
    const std::string& path() const { return path_; }
    void set_path(std::string path) { path_ = std::move(path); }

private:
    PredictorState state_;
    std::string path_;
};

// Runs the body with a fresh compile-mode context and returns the body's
// result plus the captured trace. Body exceptions propagate after teardown.
template <typename Body>
auto with_compile_context(std::shared_ptr<Lm> lm, std::shared_ptr<Retriever> retriever,
                          Body&& body) {
    ExecutionContext context = ExecutionContext::compile(std::move(lm), std::move(retriever));
    using Result = std::invoke_result_t<Body&, ExecutionContext&>;
    if constexpr (std::is_void_v<Result>) {
        body(context);
        return context.trace_snapshot();
    } else {
        Result result = body(context);
        return std::make_pair(std::move(result), context.trace_snapshot());
    }
}

} // namespace lmpipe
