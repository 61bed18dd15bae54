function handle(event) {
  return this.prefix + event;
}

module.exports = {
  handle: handle
};
