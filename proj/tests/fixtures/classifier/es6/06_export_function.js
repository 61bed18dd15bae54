export function tick() {
  return Date.now();
}
