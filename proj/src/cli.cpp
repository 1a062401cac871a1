#include "fractalmsg/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "fractalmsg/analysis.hpp"
#include "fractalmsg/channel.hpp"
#include "fractalmsg/codec.hpp"
#include "fractalmsg/errors.hpp"
#include "fractalmsg/mandelbrot.hpp"
#include "fractalmsg/signal_io.hpp"
#include "fractalmsg/weierstrass.hpp"

namespace fractalmsg::cli {
namespace {

using nlohmann::json;

struct ParamFlags {
    double a = 0.5;
    double b = 3.0;
    bool strict = false;

    void add(CLI::App& app) {
        app.add_option("--a", a, "Amplitude ratio, 0 < a < 1")->capture_default_str();
        app.add_option("--b", b, "Frequency ratio, b > 1")->capture_default_str();
        app.add_flag("--strict", strict, "Validate against ab > 1 + 3pi/2 with odd integer b");
    }
    FractalParams make() const { return FractalParams(a, b, strict ? Constraint::Weierstrass : Constraint::Hardy); }
};

struct MessageFlags {
    std::string text;
    std::string bits;
    std::string bits_file;

    void add(CLI::App& app) {
        auto* t = app.add_option("--msg", text, "Message text (7-bit ASCII)");
        auto* b = app.add_option("--bits", bits, "Message as a '0'/'1' string");
        auto* f = app.add_option("--bits-file", bits_file, "File holding a '0'/'1' string");
        t->excludes(b)->excludes(f);
        b->excludes(f);
    }
    bool given() const { return !text.empty() || !bits.empty() || !bits_file.empty(); }
    BitStream make() const {
        if (!bits_file.empty()) return BitStream::parse(io::read_file(bits_file));
        if (!bits.empty()) return BitStream::parse(bits);
        if (!text.empty()) return text_to_bits(text);
        throw ParameterError("one of --msg, --bits or --bits-file is required");
    }
};

std::string infer_format(const std::string& format, const std::string& path) {
    if (!format.empty()) return format;
    const auto ext = std::filesystem::path(path).extension().string();
    if (ext == ".raw" || ext == ".fmsg") return "raw";
    if (ext == ".wav") return "wav";
    return "csv";
}

SampledSignal read_signal(const std::string& path, const std::string& format) {
    const auto contents = io::read_file(path);
    const auto fmt = infer_format(format, path);
    if (fmt == "raw") return io::parse_raw(contents);
    if (fmt == "csv") return io::parse_csv(contents);
    throw ParameterError("cannot read signals in format '" + fmt + "'");
}

void write_signal(const SampledSignal& signal, const std::string& path, const std::string& format,
                  double time_unit_ms) {
    const auto fmt = infer_format(format, path);
    if (fmt == "csv") {
        io::write_file_atomic(path, io::format_csv(signal));
    } else if (fmt == "raw") {
        io::write_file_atomic(path, io::format_raw(signal));
    } else if (fmt == "wav") {
        io::write_file_atomic(path, io::format_wav(signal, {time_unit_ms * 1e-3, 0.9}));
    } else {
        throw ParameterError("unknown signal format '" + fmt + "'");
    }
}

Region parse_region(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ':')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw ParameterError("region component '" + part + "' is not a number");
        }
    }
    if (v.size() != 4) throw ParameterError("region must be re_min:im_min:re_max:im_max");
    return {v[0], v[1], v[2], v[3]};
}

std::pair<unsigned, unsigned> parse_resolution(const std::string& text) {
    const auto x = text.find('x');
    try {
        if (x == std::string::npos) throw std::invalid_argument(text);
        const long w = std::stol(text.substr(0, x));
        const long h = std::stol(text.substr(x + 1));
        if (w < 1 || h < 1 || w > 65536 || h > 65536) throw std::out_of_range(text);
        return {static_cast<unsigned>(w), static_cast<unsigned>(h)};
    } catch (const std::exception&) {
        throw ParameterError("resolution must look like WIDTHxHEIGHT with positive sizes");
    }
}

Band parse_band(const std::string& text) {
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) throw std::invalid_argument(text);
        return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
    } catch (const std::exception&) {
        throw ParameterError("band must look like F_LO:F_HI");
    }
}

std::string bits_as_text_or_empty(const BitStream& bits) {
    try {
        return bits_to_text(bits);
    } catch (const EncodingError&) {
        return {};
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fractal messaging: Weierstrass-carrier ASK encoder, decoder and analysis tools", "fractalmsg"};
    app.require_subcommand(1, 1);

    json summary;

    // encode
    ParamFlags enc_params;
    MessageFlags enc_msg;
    unsigned enc_M = 0;
    double enc_rate = 0.0;
    double enc_duration = 0.0;
    std::string enc_out, enc_format, enc_plot;
    double enc_unit_ms = 1.0;
    auto* encode_cmd = app.add_subcommand("encode", "Synthesize the fractal message signal");
    enc_params.add(*encode_cmd);
    enc_msg.add(*encode_cmd);
    encode_cmd->add_option("--M", enc_M, "Highest component index")->required();
    encode_cmd->add_option("--rate", enc_rate, "Samples per time unit")->required();
    encode_cmd->add_option("--duration", enc_duration, "Signal duration T")->required();
    encode_cmd->add_option("--out", enc_out, "Output signal path")->required();
    encode_cmd->add_option("--format", enc_format, "csv, raw or wav (default from extension)")
        ->check(CLI::IsMember({"csv", "raw", "wav"}));
    encode_cmd->add_option("--time-unit-ms", enc_unit_ms, "Wall-clock milliseconds per time unit (wav)")
        ->capture_default_str();
    encode_cmd->add_option("--plot", enc_plot, "Also write an SVG polyline here");

    // decode
    ParamFlags dec_params;
    unsigned dec_M = 0;
    std::size_t dec_L = 0;
    double dec_rate = 0.0;
    std::string dec_in, dec_format, dec_out;
    auto* decode_cmd = app.add_subcommand("decode", "Recover bits from a synchronized signal");
    dec_params.add(*decode_cmd);
    decode_cmd->add_option("--in", dec_in, "Input signal path")->required();
    decode_cmd->add_option("--format", dec_format, "csv or raw (default from extension)")
        ->check(CLI::IsMember({"csv", "raw"}));
    decode_cmd->add_option("--M", dec_M, "Highest component index to try")->required();
    decode_cmd->add_option("--L", dec_L, "Message length in bits")->required();
    decode_cmd->add_option("--rate", dec_rate, "Override the sample rate read from the file");
    decode_cmd->add_option("--out", dec_out, "Write consensus bits here");

    // eval
    ParamFlags ev_params;
    MessageFlags ev_msg;
    unsigned ev_M = 0;
    std::vector<double> ev_t;
    std::string ev_function = "w";
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate W or F at given times");
    ev_params.add(*eval_cmd);
    ev_msg.add(*eval_cmd);
    eval_cmd->add_option("--function", ev_function, "w (Weierstrass) or f (fractal message)")
        ->check(CLI::IsMember({"w", "f"}))
        ->capture_default_str();
    eval_cmd->add_option("--M", ev_M, "Highest component index")->required();
    eval_cmd->add_option("--t", ev_t, "Evaluation times")->required();

    // dimension
    ParamFlags dim_params;
    MessageFlags dim_msg;
    std::string dim_in, dim_format, dim_function = "w";
    unsigned dim_M = 20;
    double dim_rate = 32768.0, dim_duration = 2.0;
    int k_min = 3, k_max = 9;
    auto* dim_cmd = app.add_subcommand("dimension", "Box-counting and theoretical fractal dimension");
    dim_params.add(*dim_cmd);
    dim_msg.add(*dim_cmd);
    dim_cmd->add_option("--in", dim_in, "Signal file; when absent the signal is synthesized");
    dim_cmd->add_option("--format", dim_format, "csv or raw")->check(CLI::IsMember({"csv", "raw"}));
    dim_cmd->add_option("--function", dim_function, "w or f when synthesizing")
        ->check(CLI::IsMember({"w", "f"}))
        ->capture_default_str();
    dim_cmd->add_option("--M", dim_M)->capture_default_str();
    dim_cmd->add_option("--rate", dim_rate)->capture_default_str();
    dim_cmd->add_option("--duration", dim_duration)->capture_default_str();
    dim_cmd->add_option("--k-min", k_min)->capture_default_str();
    dim_cmd->add_option("--k-max", k_max)->capture_default_str();

    // spectrum
    std::string sp_in, sp_format, sp_out;
    auto* spectrum_cmd = app.add_subcommand("spectrum", "One-sided DFT magnitude spectrum");
    spectrum_cmd->add_option("--in", sp_in, "Input signal path")->required();
    spectrum_cmd->add_option("--format", sp_format, "csv or raw")->check(CLI::IsMember({"csv", "raw"}));
    spectrum_cmd->add_option("--out", sp_out, "Output CSV (frequency,magnitude)")->required();

    // mandelbrot
    std::string mb_region = "-2:-1.5:1:1.5", mb_resolution = "256x256", mb_channel = "re", mb_out;
    double mb_radius = 2.0;
    unsigned mb_max_iter = 1000;
    bool mb_ascii = false;
    auto* mandel_cmd = app.add_subcommand("mandelbrot", "Render the Re/Im sign plane of z_e as PGM");
    mandel_cmd->add_option("--region", mb_region, "re_min:im_min:re_max:im_max")->capture_default_str();
    mandel_cmd->add_option("--resolution", mb_resolution, "WIDTHxHEIGHT")->capture_default_str();
    mandel_cmd->add_option("--escape-radius", mb_radius, "R_e >= 2")->capture_default_str();
    mandel_cmd->add_option("--max-iter", mb_max_iter)->capture_default_str();
    mandel_cmd->add_option("--channel", mb_channel, "re or im")
        ->check(CLI::IsMember({"re", "im"}))
        ->capture_default_str();
    mandel_cmd->add_option("--out", mb_out, "Output PGM path")->required();
    mandel_cmd->add_flag("--ascii", mb_ascii, "Write P2 instead of P5");

    // channel
    std::string ch_in, ch_out, ch_format, ch_out_format, ch_band, ch_plot;
    double ch_snr = std::numeric_limits<double>::infinity(), ch_dilation = 1.0, ch_gain = 1.0;
    std::uint64_t ch_seed = 0;
    auto* channel_cmd = app.add_subcommand("channel", "Apply dilation, band selection, gain and noise");
    channel_cmd->add_option("--in", ch_in, "Input signal path")->required();
    channel_cmd->add_option("--out", ch_out, "Output signal path")->required();
    channel_cmd->add_option("--format", ch_format, "Input format: csv or raw")
        ->check(CLI::IsMember({"csv", "raw"}));
    channel_cmd->add_option("--out-format", ch_out_format, "Output format: csv, raw or wav")
        ->check(CLI::IsMember({"csv", "raw", "wav"}));
    channel_cmd->add_option("--snr", ch_snr, "SNR in dB (default: no noise)");
    channel_cmd->add_option("--seed", ch_seed)->capture_default_str();
    channel_cmd->add_option("--dilation", ch_dilation, "Output represents s(t * dilation)")->capture_default_str();
    channel_cmd->add_option("--band", ch_band, "F_LO:F_HI pass band");
    channel_cmd->add_option("--gain", ch_gain)->capture_default_str();
    channel_cmd->add_option("--plot", ch_plot, "Also write an SVG polyline here");

    // roundtrip
    ParamFlags rt_params;
    MessageFlags rt_msg;
    unsigned rt_M = 6;
    double rt_rate = 0.0, rt_duration = 0.0, rt_snr = std::numeric_limits<double>::infinity();
    std::uint64_t rt_seed = 0;
    auto* roundtrip_cmd = app.add_subcommand("roundtrip", "Encode, optionally add noise, decode and compare");
    rt_params.add(*roundtrip_cmd);
    rt_msg.add(*roundtrip_cmd);
    roundtrip_cmd->add_option("--M", rt_M)->capture_default_str();
    roundtrip_cmd->add_option("--rate", rt_rate, "Samples per time unit (default 4*b^M)");
    roundtrip_cmd->add_option("--duration", rt_duration, "Duration (default 2L)");
    roundtrip_cmd->add_option("--snr", rt_snr, "SNR in dB (default: no noise)");
    roundtrip_cmd->add_option("--seed", rt_seed)->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidParameters;
    }

    try {
        if (encode_cmd->parsed()) {
            const auto params = enc_params.make();
            const auto bits = enc_msg.make();
            const EncodeConfig cfg{params, enc_M, enc_rate, enc_duration};
            const auto signal = encode(bits, cfg);
            write_signal(signal, enc_out, enc_format, enc_unit_ms);
            if (!enc_plot.empty()) io::write_file_atomic(enc_plot, io::format_svg(signal));
            summary = {{"command", "encode"}, {"L", bits.size()},          {"M", enc_M},
                       {"rate", enc_rate},    {"duration", enc_duration}, {"samples", signal.size()},
                       {"min_rate", cfg.minimum_rate()}, {"out", enc_out}};
        } else if (decode_cmd->parsed()) {
            const auto params = dec_params.make();
            if (dec_L == 0) throw ParameterError("--L must be positive");
            auto signal = read_signal(dec_in, dec_format);
            if (decode_cmd->count("--rate")) signal = SampledSignal(dec_rate, signal.t0, std::move(signal.samples));
            const auto result = decode(signal, params, dec_M, dec_L);
            if (!dec_out.empty()) io::write_file_atomic(dec_out, io::format_bits(result.consensus));
            const auto text = bits_as_text_or_empty(result.consensus);
            summary = {{"command", "decode"},
                       {"L", dec_L},
                       {"bits", result.consensus.to_string()},
                       {"text", text.empty() ? json(nullptr) : json(text)},
                       {"components_used", result.components_used}};
        } else if (eval_cmd->parsed()) {
            const auto params = ev_params.make();
            std::vector<double> values;
            if (ev_function == "w") {
                for (double t : ev_t) values.push_back(eval_weierstrass(params, ev_M, t));
            } else {
                const auto bits = ev_msg.make();
                for (double t : ev_t) values.push_back(eval_fractal_message(bits, params, ev_M, t));
            }
            summary = {{"command", "eval"}, {"function", ev_function}, {"t", ev_t}, {"values", values}};
        } else if (dim_cmd->parsed()) {
            const auto params = dim_params.make();
            std::optional<SampledSignal> signal;
            if (!dim_in.empty()) {
                signal = read_signal(dim_in, dim_format);
            } else if (dim_function == "w") {
                signal = sample([&](double t) { return eval_weierstrass(params, dim_M, t); }, dim_rate, 0.0,
                                dim_duration);
            } else {
                const auto bits = dim_msg.make();
                signal = sample([&](double t) { return eval_fractal_message(bits, params, dim_M, t); }, dim_rate,
                                0.0, dim_duration);
            }
            const auto est = box_count_dimension(*signal, k_min, k_max);
            summary = {{"command", "dimension"},   {"dimension", est.dimension},
                       {"r_squared", est.r_squared}, {"theoretical", theoretical_dimension(params)},
                       {"box_counts", est.box_counts}};
        } else if (spectrum_cmd->parsed()) {
            const auto signal = read_signal(sp_in, sp_format);
            const auto spectrum = power_spectrum(signal);
            std::string csv = "frequency,magnitude\n";
            std::size_t peak = spectrum.size() > 1 ? 1 : 0;
            char buf[64];
            for (std::size_t k = 0; k < spectrum.size(); ++k) {
                std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", spectrum[k].frequency, spectrum[k].magnitude);
                csv += buf;
                if (k > 0 && spectrum[k].magnitude > spectrum[peak].magnitude) peak = k;
            }
            io::write_file_atomic(sp_out, csv);
            summary = {{"command", "spectrum"},
                       {"bins", spectrum.size()},
                       {"peak_frequency", spectrum[peak].frequency},
                       {"peak_magnitude", spectrum[peak].magnitude}};
        } else if (mandel_cmd->parsed()) {
            const auto region = parse_region(mb_region);
            const auto [w, h] = parse_resolution(mb_resolution);
            const auto channel = mb_channel == "re" ? PlaneChannel::RealPart : PlaneChannel::ImagPart;
            const auto plane = render_bitplane(region, w, h, mb_radius, mb_max_iter, channel);
            io::write_file_atomic(mb_out, io::format_pgm(plane, !mb_ascii));
            std::size_t counts[3] = {0, 0, 0};
            for (auto px : plane.pixels) {
                counts[px == PixelClass::InSet ? 0 : px == PixelClass::Bit0 ? 1 : 2]++;
            }
            summary = {{"command", "mandelbrot"}, {"width", w},         {"height", h},
                       {"in_set", counts[0]},     {"bit0", counts[1]},  {"bit1", counts[2]},
                       {"out", mb_out}};
        } else if (channel_cmd->parsed()) {
            ChannelSpec spec;
            spec.snr_db = ch_snr;
            spec.dilation = ch_dilation;
            spec.gain = ch_gain;
            spec.seed = ch_seed;
            if (!ch_band.empty()) spec.band = parse_band(ch_band);
            spec.validate();
            const auto signal = read_signal(ch_in, ch_format);
            const auto result = apply_channel(signal, spec);
            write_signal(result.signal, ch_out, ch_out_format, 1.0);
            if (!ch_plot.empty()) io::write_file_atomic(ch_plot, io::format_svg(result.signal));
            summary = {{"command", "channel"},
                       {"samples", result.signal.size()},
                       {"noise_generator", result.noise.generator},
                       {"seed", result.noise.seed},
                       {"noise_variance", result.noise.variance},
                       {"out", ch_out}};
        } else if (roundtrip_cmd->parsed()) {
            const auto params = rt_params.make();
            const auto bits = rt_msg.given() ? rt_msg.make() : text_to_bits("hi!");
            const double rate = rt_rate > 0.0 ? rt_rate : 4.0 * params.frequency_scale(rt_M);
            const double duration = rt_duration > 0.0 ? rt_duration : 2.0 * static_cast<double>(bits.size());
            const auto signal = encode(bits, {params, rt_M, rate, duration});
            const auto received = add_awgn(signal, rt_snr, rt_seed);
            const auto result = decode(received.signal, params, rt_M, bits.size());
            const double ber = bit_error_rate(bits, result.consensus);
            summary = {{"command", "roundtrip"},
                       {"ok", ber == 0.0},
                       {"ber", ber},
                       {"sent", bits.to_string()},
                       {"received", result.consensus.to_string()},
                       {"components_used", result.components_used}};
            out << summary.dump() << '\n';
            return ber == 0.0 ? kSuccess : kSelfCheckFailed;
        }
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIoFailure;
    } catch (const InfeasibleError& e) {
        err << "error: " << e.what() << '\n';
        return kInfeasible;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidParameters;
    }

    out << summary.dump() << '\n';
    return kSuccess;
}

} // namespace fractalmsg::cli
