namespace lpr {
}  // namespace lpr
